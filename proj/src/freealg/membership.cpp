#include "efk/freealg/membership.hpp"

#include <Eigen/Dense>

#include <map>
#include <mutex>
#include <random>
#include <unordered_map>

namespace efk::freealg {

namespace {

using SparseQ = std::vector<std::pair<int, mpq_class>>; // ids strictly decreasing

std::uint64_t word_key(const Word& w)
{
    std::uint64_t k = 1;
    for (std::uint8_t letter : w)
        k = k * 32 + letter;
    return k;
}

// All words of length <= D for rank n, grouped by grade, each group in
// deglex order.
struct Catalog {
    int n = 0, D = 0;
    std::vector<Word> words;
    std::vector<Perm> grades;
    std::map<std::uint32_t, std::vector<int>> by_grade;                   // grade -> word indices
    std::map<std::pair<int, std::uint32_t>, std::vector<int>> by_length;  // (len, grade) -> indices
};

const Catalog& catalog(int n, int D)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<Catalog>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{n, D}];
    if (!slot) {
        auto c = std::make_unique<Catalog>();
        c->n = n;
        c->D = D;
        for (int len = 0; len <= D; ++len)
            for (Word& w : all_words(n, len)) {
                const Perm g = grade(w, n);
                const int idx = static_cast<int>(c->words.size());
                c->words.push_back(std::move(w));
                c->grades.push_back(g);
                c->by_grade[g.code()].push_back(idx);
                c->by_length[{len, g.code()}].push_back(idx);
            }
        slot = std::move(c);
    }
    return *slot;
}

// a - f * b, both sorted by decreasing id.
SparseQ axpy(const SparseQ& a, const mpq_class& f, const SparseQ& b)
{
    SparseQ out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first > a[i].first) {
            out.emplace_back(b[j].first, -f * b[j].second);
            ++j;
        } else {
            mpq_class v = a[i].second - f * b[j].second;
            if (v != 0)
                out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseQ from_map(const std::map<int, mpq_class>& m)
{
    SparseQ out;
    for (auto it = m.rbegin(); it != m.rend(); ++it)
        if (it->second != 0)
            out.push_back(*it);
    return out;
}

// Row echelon form keyed by leading word, with memoized normal forms.
class Echelon {
public:
    void insert(SparseQ v)
    {
        while (!v.empty()) {
            const auto it = pivots_.find(v.front().first);
            if (it == pivots_.end()) {
                const mpq_class lead = v.front().second;
                if (lead != 1)
                    for (auto& [id, c] : v)
                        c /= lead;
                pivots_.emplace(v.front().first, std::move(v));
                memo_.clear();
                return;
            }
            const mpq_class f = v.front().second;
            v = axpy(v, f, it->second);
        }
    }

    const SparseQ& normal_form(int id)
    {
        if (const auto m = memo_.find(id); m != memo_.end())
            return m->second;
        const auto p = pivots_.find(id);
        SparseQ result;
        if (p == pivots_.end()) {
            result.emplace_back(id, mpq_class(1));
        } else {
            std::map<int, mpq_class> acc;
            for (std::size_t k = 1; k < p->second.size(); ++k) {
                const auto& [t, c] = p->second[k];
                for (const auto& [u, d] : normal_form(t))
                    acc[u] -= c * d;
            }
            result = from_map(acc);
        }
        return memo_.emplace(id, std::move(result)).first->second;
    }

    std::size_t rank() const { return pivots_.size(); }

private:
    std::unordered_map<int, SparseQ> pivots_;
    std::unordered_map<int, SparseQ> memo_;
};

// A square relation placed as u ([ij]^2 - h - c) v.
struct SquareColumn {
    int top = 0;    // id of u[ij][ij]v
    int low = 0;    // id of uv
    int a = 0, b = 0; // x_a - x_b is the twisted argument of h
    int i = 0, j = 0;
};

struct Block {
    Perm g;
    std::vector<int> word_index;                  // catalog indices, id order
    std::unordered_map<std::uint64_t, int> id_of;
    Echelon echelon;
    std::vector<SquareColumn> squares;
    long columns = 0;
};

void build_block(Block& blk, const Catalog& cat, const std::vector<Relation>& rels, int D,
                 const std::function<std::optional<mpq_class>(int, int)>& constant_square, long max_words)
{
    const auto found = cat.by_grade.find(blk.g.code());
    if (found == cat.by_grade.end())
        return;
    blk.word_index = found->second;
    if (static_cast<long>(blk.word_index.size()) > max_words)
        throw DegreeBoundExceeded("membership block of " + std::to_string(blk.word_index.size()) +
                                  " words exceeds the budget");
    for (int id = 0; id < static_cast<int>(blk.word_index.size()); ++id)
        blk.id_of.emplace(word_key(cat.words[blk.word_index[id]]), id);
    auto id_of = [&](const Word& w) { return blk.id_of.at(word_key(w)); };

    for (int lu = 0; lu <= D - 2; ++lu)
        for (const auto& [key, us] : cat.by_length) {
            if (key.first != lu)
                continue;
            for (int ui : us) {
                const Word& u = cat.words[ui];
                const Perm& qu = cat.grades[ui];
                for (const Relation& r : rels) {
                    const Perm need = qu.compose(r.grade).inverse().compose(blk.g);
                    for (int lv = 0; lv + lu + 2 <= D; ++lv) {
                        const auto vs = cat.by_length.find({lv, need.code()});
                        if (vs == cat.by_length.end())
                            continue;
                        for (int vi : vs->second) {
                            const Word& v = cat.words[vi];
                            ++blk.columns;
                            if (r.type == RelationType::square) {
                                Word top = u;
                                top.insert(top.end(), r.top.front().first.begin(), r.top.front().first.end());
                                top.insert(top.end(), v.begin(), v.end());
                                Word low = u;
                                low.insert(low.end(), v.begin(), v.end());
                                const auto cst = constant_square(r.i, r.j);
                                if (cst) {
                                    SparseQ vec{{id_of(top), mpq_class(1)}};
                                    if (*cst != 0)
                                        vec.emplace_back(id_of(low), -*cst);
                                    blk.echelon.insert(std::move(vec));
                                } else {
                                    blk.squares.push_back({id_of(top), id_of(low), qu(r.i), qu(r.j), r.i, r.j});
                                }
                                continue;
                            }
                            std::map<int, mpq_class> acc;
                            for (const auto& [rw, s] : r.top) {
                                Word w = u;
                                w.insert(w.end(), rw.begin(), rw.end());
                                w.insert(w.end(), v.begin(), v.end());
                                acc[id_of(w)] += s;
                            }
                            blk.echelon.insert(from_map(acc));
                        }
                    }
                }
            }
        }
}

int resolve_bound(int target_degree, const MembershipOptions& opts)
{
    const int D = opts.degree_bound < 0 ? target_degree : opts.degree_bound;
    if (target_degree > D)
        throw DegreeBoundExceeded("target degree " + std::to_string(target_degree) + " exceeds the degree bound " +
                                  std::to_string(D));
    if (D > 9)
        throw DegreeBoundExceeded("degree bound above 9 is outside the supported range");
    return D;
}

template <class S>
std::map<std::uint32_t, Perm> target_grades(const AlgElem<S>& t)
{
    std::map<std::uint32_t, Perm> out;
    for (const auto& [w, c] : t.terms()) {
        const Perm g = grade(w, t.rank());
        out.emplace(g.code(), g);
    }
    return out;
}

double max_of(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, x);
    return m;
}

} // namespace

nlohmann::json MembershipCertificate::to_json() const
{
    return {{"member", member},
            {"backend", backend},
            {"degree_bound", degree_bound},
            {"tol", tol},
            {"residuals", residuals},
            {"max_residual", max_residual},
            {"sample_plan",
             {{"seed", plan.rng_seed}, {"num_points", plan.num_points}, {"pole_margin", plan.pole_margin},
              {"box", plan.box}}},
            {"substitutions", substitutions},
            {"blocks", blocks},
            {"columns", columns},
            {"normal_words", normal_words}};
}

MembershipCertificate is_zero_mod_ideal(const NumericElem& target, const RelationSet& rs,
                                        const MembershipOptions& opts)
{
    if (target.rank() != rs.rank())
        throw BackendMismatch("target and relation set have different ranks");
    const int n = rs.rank();
    const int D = resolve_bound(target.degree(), opts);
    opts.plan.validate();

    MembershipCertificate cert;
    cert.backend = "numeric";
    cert.degree_bound = D;
    cert.tol = opts.tol;
    cert.plan = opts.plan;

    const Catalog& cat = catalog(n, D);
    const auto rels = rs.relations();
    const auto grades = target_grades(target);

    struct Prepared {
        std::vector<int> rows;                      // normal ids -> matrix rows
        std::unordered_map<int, int> row_of;
        std::vector<int> row_len;                   // word length per row
        std::vector<std::vector<std::pair<int, double>>> target_nf; // per target term
        std::vector<const NumericScalar*> target_coeff;
        std::vector<std::vector<std::pair<int, double>>> top_nf, low_nf;
        std::vector<SquareColumn> squares;
    };
    std::vector<Prepared> prepared;
    auto to_rows = [&cat](Prepared& p, const Block& blk, const SparseQ& v) {
        std::vector<std::pair<int, double>> out;
        for (const auto& [id, q] : v) {
            auto [it, fresh] = p.row_of.emplace(id, static_cast<int>(p.rows.size()));
            if (fresh) {
                p.rows.push_back(id);
                p.row_len.push_back(static_cast<int>(cat.words[blk.word_index[id]].size()));
            }
            out.emplace_back(it->second, q.get_d());
        }
        return out;
    };

    for (const auto& [code, g] : grades) {
        Block blk;
        blk.g = g;
        build_block(blk, cat, rels, D, [](int, int) { return std::optional<mpq_class>{}; }, opts.max_block_words);
        cert.columns += blk.columns;
        Prepared p;
        for (const auto& [w, c] : target.terms()) {
            if (!(grade(w, n) == g))
                continue;
            p.target_nf.push_back(to_rows(p, blk, blk.echelon.normal_form(blk.id_of.at(word_key(w)))));
            p.target_coeff.push_back(&c);
        }
        for (const SquareColumn& sq : blk.squares) {
            p.top_nf.push_back(to_rows(p, blk, blk.echelon.normal_form(sq.top)));
            p.low_nf.push_back(to_rows(p, blk, blk.echelon.normal_form(sq.low)));
            p.squares.push_back(sq);
        }
        cert.normal_words += static_cast<long>(blk.word_index.size() - blk.echelon.rank());
        prepared.push_back(std::move(p));
    }
    cert.blocks = static_cast<int>(prepared.size());

    auto accept = [&rs, &opts, n](PointView xi) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rs.pole_distance(xi[a] - xi[b]) < opts.plan.pole_margin)
                    return false;
        return true;
    };
    const auto points = opts.plan.generate(n, accept);

    // Residual at one point, or nullopt when some value is not finite. Rows
    // of word length L are weighted by scale^((L - D) / 2), scale the largest
    // lower term, so that square columns have entries of order one and a
    // defect in a low degree is not hidden behind large lower terms.
    auto evaluate = [&](const Point& xi) -> std::optional<double> {
        std::vector<std::vector<Complex>> lower(n + 1, std::vector<Complex>(n + 1));
        double scale = 1.0;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const Complex cij = rs.c(i, j);
                for (int a = 1; a <= n; ++a)
                    for (int b = 1; b <= n; ++b)
                        if (a != b) {
                            const Complex f = rs.h(xi[a - 1] - xi[b - 1]) + cij;
                            if (!is_finite(f))
                                return std::nullopt;
                            scale = std::max(scale, std::abs(f));
                        }
            }
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                if (a != b)
                    lower[a][b] = rs.h(xi[a - 1] - xi[b - 1]);
        std::vector<double> weight(D + 1);
        for (int L = 0; L <= D; ++L)
            weight[L] = std::pow(scale, 0.5 * (L - D));

        double target_norm2 = 0.0, residual2 = 0.0;
        for (const Prepared& p : prepared) {
            const int rows = static_cast<int>(p.rows.size());
            Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(rows);
            for (std::size_t t = 0; t < p.target_nf.size(); ++t) {
                const Complex v = p.target_coeff[t]->eval(xi);
                if (!is_finite(v))
                    return std::nullopt;
                for (const auto& [r, q] : p.target_nf[t])
                    rhs[r] += v * q;
            }
            for (int r = 0; r < rows; ++r)
                rhs[r] *= weight[p.row_len[r]];
            target_norm2 += rhs.squaredNorm();
            if (p.squares.empty() || rhs.norm() == 0.0) {
                residual2 += rhs.squaredNorm();
                continue;
            }
            const int cols = static_cast<int>(p.squares.size());
            Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows, cols);
            for (int k = 0; k < cols; ++k) {
                const SquareColumn& sq = p.squares[k];
                const Complex f = lower[sq.a][sq.b] + rs.c(sq.i, sq.j);
                for (const auto& [r, q] : p.top_nf[k])
                    A(r, k) += q * weight[p.row_len[r]];
                for (const auto& [r, q] : p.low_nf[k])
                    A(r, k) -= f * q * weight[p.row_len[r]];
                const double norm = A.col(k).norm();
                if (norm > 0.0)
                    A.col(k) /= norm;
            }
            const Eigen::VectorXcd y = A.colPivHouseholderQr().solve(rhs);
            residual2 += (A * y - rhs).squaredNorm();
        }
        return std::sqrt(residual2) / std::max(1.0, std::sqrt(target_norm2));
    };

    for (std::size_t k = 0; k < points.size(); ++k) {
        std::optional<double> r = evaluate(points[k]);
        for (int attempt = 1; !r && attempt <= opts.max_resamples; ++attempt)
            r = evaluate(opts.plan.reseeded(attempt).generate(n, accept)[k]);
        if (!r)
            throw SampleDegenerate("membership check: no finite sample after resampling");
        cert.residuals.push_back(*r);
    }
    cert.max_residual = max_of(cert.residuals);
    cert.member = cert.max_residual < opts.tol;
    return cert;
}

MembershipCertificate is_zero_mod_ideal(const ExactElem& target, const RelationSet& rs, const MembershipOptions& opts)
{
    if (!rs.exact_capable())
        throw BackendMismatch("exact membership needs a psi_zero or multiparam relation set");
    if (target.rank() != rs.rank())
        throw BackendMismatch("target and relation set have different ranks");
    const int n = rs.rank();
    const int D = resolve_bound(target.degree(), opts);

    MembershipCertificate cert;
    cert.backend = "exact";
    cert.degree_bound = D;
    cert.tol = 0.0;

    const Catalog& cat = catalog(n, D);
    const auto rels = rs.relations();
    const auto grades = target_grades(target);

    bool uses_p = rs.mode() == RelationMode::multiparam;
    const int draws = uses_p ? std::max(1, opts.substitutions) : 1;
    std::mt19937_64 rng(splitmix64(opts.seed));
    for (int draw = 0; draw < draws; ++draw) {
        std::map<int, mpq_class> p_value;
        std::map<int, Polynomial> p_subst;
        if (uses_p)
            for (int j = 2; j <= n; ++j)
                for (int i = 1; i < j; ++i) {
                    long num = 0;
                    while (num == 0)
                        num = static_cast<long>(rng() % 65536) - 32768;
                    const long den = static_cast<long>(rng() % 65535) + 1;
                    mpq_class q(num, den);
                    q.canonicalize();
                    p_value[p_var(i, j)] = q;
                    p_subst[p_var(i, j)] = Polynomial(q);
                }
        auto constant_square = [&](int i, int j) -> std::optional<mpq_class> {
            if (!uses_p)
                return mpq_class(0);
            return p_value.at(p_var(i, j));
        };

        long nonzero = 0;
        for (const auto& [code, g] : grades) {
            Block blk;
            blk.g = g;
            build_block(blk, cat, rels, D, constant_square, opts.max_block_words);
            if (draw == 0) {
                cert.columns += blk.columns;
                cert.normal_words += static_cast<long>(blk.word_index.size() - blk.echelon.rank());
            }
            std::map<int, ExactScalar> nf;
            for (const auto& [w, c] : target.terms()) {
                if (!(grade(w, n) == g))
                    continue;
                const ExactScalar coeff = uses_p ? c.substitute(p_subst) : c;
                for (const auto& [id, q] : blk.echelon.normal_form(blk.id_of.at(word_key(w))))
                    nf[id] += coeff * ExactScalar(q);
            }
            for (const auto& [id, v] : nf)
                if (!v.is_zero())
                    ++nonzero;
        }
        cert.residuals.push_back(static_cast<double>(nonzero));
    }
    cert.blocks = static_cast<int>(grades.size());
    cert.substitutions = draws;
    cert.max_residual = max_of(cert.residuals);
    cert.member = cert.max_residual == 0.0;
    return cert;
}

} // namespace efk::freealg
