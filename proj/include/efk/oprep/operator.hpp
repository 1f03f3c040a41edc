#pragma once

#include "efk/scalars/linear_action.hpp"
#include "efk/scalars/numeric_scalar.hpp"
#include "efk/scalars/polynomial.hpp"
#include "efk/scalars/sample_plan.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace efk::oprep {

// Finite sum of c_w(xi) w over linear group elements, acting on functions by
// (c w f)(xi) = c_w(xi) f(w xi). Composition follows
// (c P)(d Q) = c * d(P .) * (Q P).
class GroupAlgebraOperator {
public:
    explicit GroupAlgebraOperator(int dim = 1) : dim_(dim) {}

    static GroupAlgebraOperator identity(int dim);
    static GroupAlgebraOperator multiplication(int dim, const NumericScalar& c);
    // c(xi) * w
    static GroupAlgebraOperator term(const LinearAction& w, const NumericScalar& c);

    int dim() const { return dim_; }
    const std::map<LinearAction, NumericScalar>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    GroupAlgebraOperator& add(const LinearAction& w, const NumericScalar& c);
    GroupAlgebraOperator& operator+=(const GroupAlgebraOperator& o);
    GroupAlgebraOperator& operator-=(const GroupAlgebraOperator& o);
    friend GroupAlgebraOperator operator+(GroupAlgebraOperator a, const GroupAlgebraOperator& b) { return a += b; }
    friend GroupAlgebraOperator operator-(GroupAlgebraOperator a, const GroupAlgebraOperator& b) { return a -= b; }
    friend GroupAlgebraOperator operator*(const GroupAlgebraOperator& a, const GroupAlgebraOperator& b);
    friend GroupAlgebraOperator operator*(const NumericScalar& c, const GroupAlgebraOperator& a);

    // Value of the operator applied to f at xi, and the sum of the absolute
    // values of the terms (a scale for relative residuals).
    std::pair<Complex, double> apply(const std::function<Complex(PointView)>& f, PointView xi) const;

private:
    int dim_;
    std::map<LinearAction, NumericScalar> terms_;
};

// Evaluable test function; polynomials keep their exact form.
struct TestFunction {
    std::string label;
    std::function<Complex(PointView)> eval;
    std::optional<Polynomial> exact;
};

// Seeded bank: exponentials e^{mu.xi}, random polynomials of degree <= 4, and
// products of the two kinds.
class TestFunctionBank {
public:
    TestFunctionBank(int dim, std::uint64_t seed, int size = 8);
    int dim() const { return dim_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<TestFunction>& functions() const { return functions_; }
    std::vector<Polynomial> polynomials() const;

private:
    int dim_;
    std::uint64_t seed_;
    std::vector<TestFunction> functions_;
};

// Random polynomial in x_1..x_dim with total degree <= max_degree.
Polynomial random_polynomial(int dim, int max_degree, UniformStream& rng, int terms = 5);

struct IdentityReport {
    std::string identity;
    std::string family;
    SamplePlan plan;
    double tol = 1e-8;
    double max_residual = 0.0;
    long evaluations = 0;
    int resamples = 0;
    bool pass = false;

    nlohmann::json to_json() const;
};

// (value of lhs - rhs, magnitude scale) for one function at one point.
using PointwiseCheck = std::function<std::pair<Complex, double>(const TestFunction&, PointView)>;

// Residual |value| / max(1, scale) over every bank function at every sample
// point. A point whose evaluation is not finite or hits a pole is redrawn
// from a reseeded plan up to max_resamples times, then PoleProximity.
IdentityReport verify_pointwise(const std::string& identity, const std::string& family, int dim,
                                const PointwiseCheck& check, const std::vector<TestFunction>& functions,
                                const SamplePlan& plan, double tol, const PointValidator& accept = {},
                                int max_resamples = 5);

// Scalar identity in the sample coordinates: value(xi) returns (sum, scale).
IdentityReport verify_scalar(const std::string& identity, const std::string& family, int dim,
                             const std::function<std::pair<Complex, double>(PointView)>& value,
                             const SamplePlan& plan, double tol, const PointValidator& accept = {},
                             int max_resamples = 5);

} // namespace efk::oprep
