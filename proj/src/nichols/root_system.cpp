#include "efk/nichols/root_system.hpp"

#include "efk/errors.hpp"

#include <Eigen/Dense>

#include <map>

namespace efk::nichols {

namespace {

std::vector<int> unit(int dim, int i, int s = 1)
{
    std::vector<int> v(dim, 0);
    v[i] = s;
    return v;
}

std::vector<int> add(std::vector<int> a, const std::vector<int>& b, int f = 1)
{
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] += f * b[k];
    return a;
}

int dot(const std::vector<int>& a, const std::vector<int>& b)
{
    int s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k] * b[k];
    return s;
}

} // namespace

RootSystemData RootSystemData::A(int n)
{
    if (n < 2 || n > 8)
        throw ParamError("type A root system needs 2 <= n <= 8");
    RootSystemData rs;
    rs.type_ = RootType::A;
    rs.name_ = "A" + std::to_string(n - 1);
    rs.dim_ = n;
    std::vector<std::vector<int>> pos;
    std::vector<std::string> labels;
    std::vector<int> simple;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1)
                simple.push_back(static_cast<int>(pos.size()));
            pos.push_back(add(unit(n, i), unit(n, j), -1));
            labels.push_back("[" + std::to_string(i + 1) + std::to_string(j + 1) + "]");
        }
    rs.finish(std::move(pos), std::move(labels), std::move(simple));
    return rs;
}

RootSystemData RootSystemData::B(int n)
{
    if (n < 2 || n > 4)
        throw ParamError("type B root system needs 2 <= n <= 4");
    RootSystemData rs;
    rs.type_ = RootType::B;
    rs.name_ = "B" + std::to_string(n);
    rs.dim_ = n;
    std::vector<std::vector<int>> pos;
    std::vector<std::string> labels;
    std::vector<int> simple;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1)
                simple.push_back(static_cast<int>(pos.size()));
            pos.push_back(add(unit(n, i), unit(n, j), -1));
            labels.push_back("[" + std::to_string(i + 1) + std::to_string(j + 1) + "]");
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            pos.push_back(add(unit(n, i), unit(n, j)));
            labels.push_back("[" + std::to_string(i + 1) + "bar" + std::to_string(j + 1) + "]");
        }
    for (int i = 0; i < n; ++i) {
        if (i == n - 1)
            simple.push_back(static_cast<int>(pos.size()));
        pos.push_back(unit(n, i));
        labels.push_back("[" + std::to_string(i + 1) + "]");
    }
    rs.finish(std::move(pos), std::move(labels), std::move(simple));
    return rs;
}

RootSystemData RootSystemData::G2()
{
    RootSystemData rs;
    rs.type_ = RootType::G2;
    rs.name_ = "G2";
    rs.dim_ = 3;
    const std::vector<int> a1{-2, 1, 1}, a2{1, -1, 0};
    auto comb = [&](int p, int q) { return add(add(std::vector<int>(3, 0), a1, p), a2, q); };
    // a1, a1+a2, 2a1+3a2, a1+2a2, a1+3a2, a2
    std::vector<std::vector<int>> pos{comb(1, 0), comb(1, 1), comb(2, 3), comb(1, 2), comb(1, 3), comb(0, 1)};
    std::vector<std::string> labels{"[a1]", "[a1+a2]", "[2a1+3a2]", "[a1+2a2]", "[a1+3a2]", "[a2]"};
    rs.finish(std::move(pos), std::move(labels), {0, 5});
    return rs;
}

RootSystemData RootSystemData::from_name(const std::string& name)
{
    if (name == "G2")
        return G2();
    if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'B')) {
        int r = 0;
        try {
            r = std::stoi(name.substr(1));
        } catch (const std::exception&) {
            throw ParamError("unknown root system type: " + name);
        }
        return name[0] == 'A' ? A(r + 1) : B(r);
    }
    throw ParamError("unknown root system type: " + name);
}

void RootSystemData::finish(std::vector<std::vector<int>> positive, std::vector<std::string> labels,
                            std::vector<int> simple)
{
    m_ = static_cast<int>(positive.size());
    labels_ = std::move(labels);
    simple_ = std::move(simple);
    roots_ = positive;
    for (const auto& r : positive)
        roots_.push_back(add(std::vector<int>(r.size(), 0), r, -1));

    std::map<std::vector<int>, int> lookup;
    for (int k = 0; k < 2 * m_; ++k)
        lookup[roots_[k]] = k;

    reflect_.assign(2 * m_, std::vector<int>(2 * m_));
    for (int a = 0; a < 2 * m_; ++a) {
        const int aa = dot(roots_[a], roots_[a]);
        for (int b = 0; b < 2 * m_; ++b) {
            const int num = 2 * dot(roots_[a], roots_[b]);
            if (num % aa != 0)
                throw Error("root system: non-integral Cartan number");
            const auto image = add(roots_[b], roots_[a], -num / aa);
            const auto it = lookup.find(image);
            if (it == lookup.end())
                throw Error("root system: root set not closed under reflection");
            reflect_[a][b] = it->second;
        }
    }

    coroots_.clear();
    for (int k = 0; k < m_; ++k) {
        const double aa = dot(roots_[k], roots_[k]);
        std::vector<double> c(dim_);
        for (int t = 0; t < dim_; ++t)
            c[t] = 2.0 * roots_[k][t] / aa;
        coroots_.push_back(std::move(c));
    }

    // pi_i = sum_k c_ik alpha_k with sum_k c_ik (alpha_k, alpha_j^v) = delta_ij.
    const int r = rank();
    Eigen::MatrixXd gram(r, r);
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < r; ++j) {
            double s = 0.0;
            for (int t = 0; t < dim_; ++t)
                s += roots_[simple_[k]][t] * coroots_[simple_[j]][t];
            gram(k, j) = s;
        }
    const Eigen::MatrixXd coeff = gram.inverse();
    weights_.assign(r, std::vector<double>(dim_, 0.0));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k)
            for (int t = 0; t < dim_; ++t)
                weights_[i][t] += coeff(i, k) * roots_[simple_[k]][t];

    braid_.resize(static_cast<std::size_t>(m_) * m_);
    for (int a = 0; a < m_; ++a)
        for (int b = 0; b < m_; ++b) {
            const auto [image, sign] = to_positive(reflect_[a][b]);
            braid_[a * m_ + b] = {image, a, sign};
        }
}

int RootSystemData::index_of(const std::vector<int>& v) const
{
    for (int k = 0; k < 2 * m_; ++k)
        if (roots_[k] == v)
            return k;
    return -1;
}

int RootSystemData::inner(int a, int b) const { return dot(roots_[a], roots_[b]); }

} // namespace efk::nichols
