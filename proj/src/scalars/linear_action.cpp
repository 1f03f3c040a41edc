#include "efk/scalars/linear_action.hpp"

#include <sstream>

namespace efk {

void LinearAction::rekey()
{
    key_.resize(m_.size() + 1);
    key_[0] = n_;
    for (size_t k = 0; k < m_.size(); ++k) {
        key_[k + 1] = std::lround(6.0 * m_[k]);
        m_[k] = static_cast<double>(key_[k + 1]) / 6.0;
    }
}

LinearAction LinearAction::identity(int n)
{
    LinearAction a;
    a.n_ = n;
    a.m_.assign(n * n, 0.0);
    for (int k = 0; k < n; ++k)
        a.m_[k * n + k] = 1.0;
    a.rekey();
    return a;
}

LinearAction LinearAction::permutation(const std::vector<int>& perm)
{
    LinearAction a;
    a.n_ = static_cast<int>(perm.size());
    a.m_.assign(a.n_ * a.n_, 0.0);
    for (int k = 0; k < a.n_; ++k)
        a.m_[k * a.n_ + (perm[k] - 1)] = 1.0;
    a.rekey();
    return a;
}

LinearAction LinearAction::transposition(int n, int i, int j)
{
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k)
        perm[k] = k + 1;
    std::swap(perm[i - 1], perm[j - 1]);
    return permutation(perm);
}

LinearAction LinearAction::reflection(const std::vector<double>& alpha)
{
    const int n = static_cast<int>(alpha.size());
    double norm2 = 0.0;
    for (double v : alpha)
        norm2 += v * v;
    LinearAction a;
    a.n_ = n;
    a.m_.assign(n * n, 0.0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            a.m_[r * n + c] = (r == c ? 1.0 : 0.0) - 2.0 * alpha[r] * alpha[c] / norm2;
    a.rekey();
    return a;
}

bool LinearAction::is_identity() const { return *this == identity(n_); }

void LinearAction::apply(PointView xi, Complex* out) const
{
    for (int r = 0; r < n_; ++r) {
        Complex acc{0.0, 0.0};
        for (int c = 0; c < n_; ++c) {
            const double v = m_[r * n_ + c];
            if (v != 0.0)
                acc += v * xi[c];
        }
        out[r] = acc;
    }
}

Point LinearAction::apply(PointView xi) const
{
    Point out(n_);
    apply(xi, out.data());
    return out;
}

LinearAction LinearAction::operator*(const LinearAction& o) const
{
    LinearAction a;
    a.n_ = n_;
    a.m_.assign(n_ * n_, 0.0);
    for (int r = 0; r < n_; ++r)
        for (int k = 0; k < n_; ++k) {
            const double v = m_[r * n_ + k];
            if (v == 0.0)
                continue;
            for (int c = 0; c < n_; ++c)
                a.m_[r * n_ + c] += v * o.m_[k * n_ + c];
        }
    a.rekey();
    return a;
}

std::string LinearAction::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < n_; ++r) {
        os << (r ? ",[" : "[");
        for (int c = 0; c < n_; ++c)
            os << (c ? "," : "") << m_[r * n_ + c];
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace efk
