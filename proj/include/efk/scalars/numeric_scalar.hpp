#pragma once

#include "efk/scalars/linear_action.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace efk {

// A coefficient function xi -> c(xi), stored as an immutable expression tree
// so that twisting by a group element is symbolic: twisted(c, P)(xi) = c(P xi).
// Constants fold eagerly; nested twists compose into a single matrix and a
// twist that composes to the identity disappears.
class NumericScalar {
public:
    using Fn = std::function<Complex(PointView)>;

    NumericScalar() : NumericScalar(Complex{0.0, 0.0}) {}
    NumericScalar(Complex c); // NOLINT(google-explicit-constructor)
    NumericScalar(double c) : NumericScalar(Complex{c, 0.0}) {} // NOLINT(google-explicit-constructor)
    NumericScalar(int c) : NumericScalar(Complex{static_cast<double>(c), 0.0}) {} // NOLINT(google-explicit-constructor)

    static NumericScalar leaf(Fn f, std::string label);
    // f(x_i - x_j), 1-based indices.
    static NumericScalar pair_function(int i, int j, std::function<Complex(Complex)> f, std::string label);
    // x_i as a coordinate function.
    static NumericScalar coordinate(int i);

    Complex eval(PointView xi) const;
    std::optional<Complex> constant() const;
    bool is_zero() const;
    NumericScalar twisted(const LinearAction& p) const;
    // Twist by a permutation of coordinates, (P xi)_k = xi_{perm[k] - 1}.
    NumericScalar permute_x(const std::vector<int>& perm) const;

    NumericScalar operator-() const;
    NumericScalar& operator+=(const NumericScalar& o) { return *this = *this + o; }
    NumericScalar& operator-=(const NumericScalar& o) { return *this = *this - o; }
    NumericScalar& operator*=(const NumericScalar& o) { return *this = *this * o; }
    friend NumericScalar operator+(const NumericScalar& a, const NumericScalar& b);
    friend NumericScalar operator-(const NumericScalar& a, const NumericScalar& b);
    friend NumericScalar operator*(const NumericScalar& a, const NumericScalar& b);

    std::string to_string() const;

    struct Node;

private:
    explicit NumericScalar(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

} // namespace efk
