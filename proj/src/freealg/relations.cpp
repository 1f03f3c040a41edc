#include "efk/freealg/relations.hpp"

#include <limits>

namespace efk::freealg {

namespace {

std::pair<Word, int> bracket_word(int a, int b, int c, int d)
{
    const BracketGen g1 = BracketGen::make(a, b), g2 = BracketGen::make(c, d);
    return {Word{static_cast<std::uint8_t>(g1.id()), static_cast<std::uint8_t>(g2.id())}, g1.sign * g2.sign};
}

void check_rank(int n)
{
    if (n < 2 || n > max_rank)
        throw ParamError("relation set rank must be in 2.." + std::to_string(max_rank));
}

} // namespace

std::string to_string(RelationMode m)
{
    switch (m) {
    case RelationMode::family: return "family";
    case RelationMode::psi_zero: return "psi_zero";
    case RelationMode::multiparam: return "multiparam";
    }
    return "?";
}

RelationSet RelationSet::family(int n, PsiKind kind, const ParamSet& params, const EllipticContext& ctx,
                                Precision precision)
{
    check_rank(n);
    if (params.rank() < n)
        throw ParamError("relation set: parameters cover fewer indices than the rank");
    RelationSet rs;
    rs.n_ = n;
    rs.mode_ = RelationMode::family;
    rs.kind_ = kind;
    rs.params_ = params;
    rs.ctx_ = ctx;
    rs.psi_ = std::make_shared<const PsiFamily>(kind, params, ctx, precision);
    return rs;
}

RelationSet RelationSet::psi_zero(int n)
{
    check_rank(n);
    RelationSet rs;
    rs.n_ = n;
    rs.mode_ = RelationMode::psi_zero;
    rs.params_ = ParamSet::generic(n);
    return rs;
}

RelationSet RelationSet::multiparam(int n, Complex kappa, const std::vector<Complex>& Lambda)
{
    check_rank(n);
    if (static_cast<int>(Lambda.size()) < n)
        throw ParamError("multiparam degeneration needs one Lambda per index");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(Lambda[i] - Lambda[j]) == 0.0)
                throw ParamError("multiparam degeneration needs Lambda_ij != 0");
    RelationSet rs;
    rs.n_ = n;
    rs.mode_ = RelationMode::multiparam;
    rs.params_ = ParamSet::generic(n);
    rs.params_.kappa = kappa;
    rs.params_.Lambda = Lambda;
    return rs;
}

Complex RelationSet::h(Complex z) const
{
    if (mode_ != RelationMode::family)
        return {0.0, 0.0};
    return psi_->h(z);
}

Complex RelationSet::c(int i, int j) const
{
    switch (mode_) {
    case RelationMode::family: return psi_->c(i, j);
    case RelationMode::psi_zero: return {0.0, 0.0};
    case RelationMode::multiparam: {
        const Complex d = params_.Lambda_diff(i, j);
        return params_.kappa / (d * d);
    }
    }
    return {0.0, 0.0};
}

double RelationSet::pole_distance(Complex z) const
{
    if (mode_ != RelationMode::family)
        return std::numeric_limits<double>::infinity();
    return psi_->pole_distance(z);
}

std::vector<Relation> RelationSet::relations() const
{
    std::vector<Relation> out;
    for (int j = 2; j <= n_; ++j)
        for (int i = 1; i < j; ++i) {
            Relation r;
            r.type = RelationType::square;
            r.i = i;
            r.j = j;
            const auto id = static_cast<std::uint8_t>(pair_id(i, j));
            r.top = {{Word{id, id}, 1}};
            out.push_back(std::move(r));
        }
    // Disjoint pairs {ij}, {kl}, each unordered pair of pairs once.
    for (int a = 0; a < num_pairs(n_); ++a)
        for (int b = a + 1; b < num_pairs(n_); ++b) {
            const BracketGen p = BracketGen::from_id(a), q = BracketGen::from_id(b);
            if (p.i == q.i || p.i == q.j || p.j == q.i || p.j == q.j)
                continue;
            Relation r;
            r.type = RelationType::commute;
            r.top = {bracket_word(p.i, p.j, q.i, q.j), bracket_word(q.i, q.j, p.i, p.j)};
            r.top[1].second = -r.top[1].second;
            out.push_back(std::move(r));
        }
    // [ij][jk] + [jk][ki] + [ki][ij] for both cyclic orientations of i < j < k.
    for (int i = 1; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j)
            for (int k = j + 1; k <= n_; ++k)
                for (const auto& [a, b, c] : {std::array<int, 3>{i, j, k}, std::array<int, 3>{i, k, j}}) {
                    Relation r;
                    r.type = RelationType::three_term;
                    r.top = {bracket_word(a, b, b, c), bracket_word(b, c, c, a), bracket_word(c, a, a, b)};
                    out.push_back(std::move(r));
                }
    for (Relation& r : out)
        r.grade = grade(r.top.front().first, n_);
    return out;
}

nlohmann::json RelationSet::to_json() const
{
    nlohmann::json j{{"n", n_}, {"mode", freealg::to_string(mode_)}};
    if (mode_ == RelationMode::family) {
        j["family"] = efk::to_string(kind_);
        j["params"] = efk::to_json(params_);
        j["elliptic"] = efk::to_json(ctx_);
    } else if (mode_ == RelationMode::multiparam) {
        j["kappa"] = complex_to_json(params_.kappa);
        nlohmann::json L = nlohmann::json::array();
        for (const Complex& z : params_.Lambda)
            L.push_back(complex_to_json(z));
        j["Lambda"] = L;
    }
    return j;
}

std::vector<NumericElem> relation_generators(const RelationSet& rs)
{
    std::vector<NumericElem> out;
    const int n = rs.rank();
    for (const Relation& r : rs.relations()) {
        NumericElem e(n);
        for (const auto& [w, s] : r.top)
            e.add_term(w, NumericScalar(s));
        if (r.type == RelationType::square) {
            const Complex cij = rs.c(r.i, r.j);
            if (rs.mode() == RelationMode::family) {
                auto f = [rs, cij](Complex z) { return -(rs.h(z) + cij); };
                e.add_term(Word{}, NumericScalar::pair_function(r.i, r.j, f,
                                                                "-psi~" + std::to_string(r.i) + std::to_string(r.j)));
            } else {
                e.add_term(Word{}, NumericScalar(-cij));
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<ExactElem> exact_relation_generators(const RelationSet& rs)
{
    if (!rs.exact_capable())
        throw BackendMismatch("exact relation generators need a psi_zero or multiparam relation set");
    std::vector<ExactElem> out;
    for (const Relation& r : rs.relations()) {
        ExactElem e(rs.rank());
        for (const auto& [w, s] : r.top)
            e.add_term(w, ExactScalar(static_cast<long>(s)));
        if (r.type == RelationType::square && rs.mode() == RelationMode::multiparam)
            e.add_term(Word{}, -ExactScalar::p(r.i, r.j));
        out.push_back(std::move(e));
    }
    return out;
}

RelationSet degenerate(const RelationSet& rs, const Degeneration& mode)
{
    if (mode.kind == Degeneration::Kind::psi_zero)
        return RelationSet::psi_zero(rs.rank());
    std::vector<Complex> Lambda = mode.Lambda.empty() ? rs.params().Lambda : mode.Lambda;
    return RelationSet::multiparam(rs.rank(), mode.kappa, Lambda);
}

} // namespace efk::freealg
