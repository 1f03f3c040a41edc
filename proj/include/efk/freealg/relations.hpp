#pragma once

#include "efk/freealg/alg_elem.hpp"
#include "efk/scalars/params.hpp"
#include "efk/scalars/psi.hpp"

#include <memory>
#include <vector>

namespace efk::freealg {

// family: [ij]^2 = h(x_ij) + c_ij from a psi family (numeric only).
// psi_zero: [ij]^2 = 0. multiparam: [ij]^2 = p_ij, central parameters.
enum class RelationMode { family, psi_zero, multiparam };

std::string to_string(RelationMode m);

enum class RelationType { square, commute, three_term };

// One ideal generator. The constant-coefficient part lives in `top`
// (length-two words with integer coefficients); a square relation also
// carries the lower term -(h(x_ij) + c_ij) on the empty word.
struct Relation {
    RelationType type = RelationType::square;
    std::vector<std::pair<Word, int>> top;
    int i = 0, j = 0; // the squared pair, for type square
    Perm grade;
};

class RelationSet {
public:
    RelationSet() = default;

    static RelationSet family(int n, PsiKind kind, const ParamSet& params, const EllipticContext& ctx = {},
                              Precision precision = Precision::standard);
    static RelationSet psi_zero(int n);
    // p_ij = kappa / Lambda_ij^2 when evaluated numerically; symbolic in the
    // exact backend.
    static RelationSet multiparam(int n, Complex kappa, const std::vector<Complex>& Lambda);

    int rank() const { return n_; }
    RelationMode mode() const { return mode_; }
    bool exact_capable() const { return mode_ != RelationMode::family; }
    const ParamSet& params() const { return params_; }
    const EllipticContext& context() const { return ctx_; }
    PsiKind kind() const { return kind_; }
    const PsiFamily* psi() const { return psi_.get(); }

    // Non-constant part of [ij]^2 as a function of z = x_i - x_j.
    Complex h(Complex z) const;
    // Constant part c_ij of [ij]^2 (numeric value).
    Complex c(int i, int j) const;
    // Distance of z from the poles of h; infinity when h has none.
    double pole_distance(Complex z) const;

    std::vector<Relation> relations() const;

    nlohmann::json to_json() const;

private:
    int n_ = 2;
    RelationMode mode_ = RelationMode::psi_zero;
    PsiKind kind_ = PsiKind::elliptic;
    ParamSet params_;
    EllipticContext ctx_;
    std::shared_ptr<const PsiFamily> psi_;
};

// Ideal generators as algebra elements. The exact version needs an
// exact-capable set; p_ij stays symbolic.
std::vector<NumericElem> relation_generators(const RelationSet& rs);
std::vector<ExactElem> exact_relation_generators(const RelationSet& rs);

struct Degeneration {
    enum class Kind { psi_zero, multiparam } kind = Kind::psi_zero;
    Complex kappa{1.0, 0.0};
    std::vector<Complex> Lambda; // per index; Lambda_ij = Lambda_i - Lambda_j
};

// Throws ParamError when some Lambda_ij = 0.
RelationSet degenerate(const RelationSet& rs, const Degeneration& mode);

} // namespace efk::freealg
