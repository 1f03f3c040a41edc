#include "efk/scalars/numeric_scalar.hpp"

#include <sstream>
#include <variant>

namespace efk {

namespace {

constexpr int max_points = 16; // stack buffer for twisted points

struct ConstNode {
    Complex value;
};
struct LeafNode {
    NumericScalar::Fn fn;
    std::string label;
};
struct SumNode {
    std::vector<NumericScalar> terms;
};
struct ProductNode {
    std::vector<NumericScalar> factors;
};
struct TwistNode {
    NumericScalar inner;
    LinearAction action;
};

} // namespace

struct NumericScalar::Node {
    std::variant<ConstNode, LeafNode, SumNode, ProductNode, TwistNode> v;
};

NumericScalar::NumericScalar(Complex c) : node_(std::make_shared<const Node>(Node{ConstNode{c}})) {}

NumericScalar NumericScalar::leaf(Fn f, std::string label)
{
    return NumericScalar(std::make_shared<const Node>(Node{LeafNode{std::move(f), std::move(label)}}));
}

NumericScalar NumericScalar::pair_function(int i, int j, std::function<Complex(Complex)> f, std::string label)
{
    return leaf([i, j, f = std::move(f)](PointView xi) { return f(xi[i - 1] - xi[j - 1]); },
                label + "(x" + std::to_string(i) + "-x" + std::to_string(j) + ")");
}

NumericScalar NumericScalar::coordinate(int i)
{
    return leaf([i](PointView xi) { return xi[i - 1]; }, "x" + std::to_string(i));
}

std::optional<Complex> NumericScalar::constant() const
{
    if (const auto* c = std::get_if<ConstNode>(&node_->v))
        return c->value;
    return std::nullopt;
}

bool NumericScalar::is_zero() const
{
    const auto c = constant();
    return c && *c == Complex{0.0, 0.0};
}

Complex NumericScalar::eval(PointView xi) const
{
    return std::visit(
        [&](const auto& n) -> Complex {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ConstNode>)
                return n.value;
            else if constexpr (std::is_same_v<T, LeafNode>)
                return n.fn(xi);
            else if constexpr (std::is_same_v<T, SumNode>) {
                Complex s{0.0, 0.0};
                for (const auto& t : n.terms)
                    s += t.eval(xi);
                return s;
            }
            else if constexpr (std::is_same_v<T, ProductNode>) {
                Complex p{1.0, 0.0};
                for (const auto& f : n.factors)
                    p *= f.eval(xi);
                return p;
            }
            else {
                Complex buf[max_points];
                Point heap;
                Complex* out = buf;
                if (n.action.dim() > max_points) {
                    heap.resize(n.action.dim());
                    out = heap.data();
                }
                n.action.apply(xi, out);
                return n.inner.eval(PointView(out, n.action.dim()));
            }
        },
        node_->v);
}

NumericScalar NumericScalar::twisted(const LinearAction& p) const
{
    if (constant())
        return *this;
    if (const auto* t = std::get_if<TwistNode>(&node_->v)) {
        // c(P_inner (Q xi)) = c((P_inner Q) xi)
        LinearAction combined = t->action * p;
        if (combined.is_identity())
            return t->inner;
        return NumericScalar(std::make_shared<const Node>(Node{TwistNode{t->inner, combined}}));
    }
    if (p.is_identity())
        return *this;
    return NumericScalar(std::make_shared<const Node>(Node{TwistNode{*this, p}}));
}

NumericScalar NumericScalar::permute_x(const std::vector<int>& perm) const
{
    if (constant())
        return *this;
    return twisted(LinearAction::permutation(perm));
}

NumericScalar NumericScalar::operator-() const
{
    if (const auto c = constant())
        return NumericScalar(-*c);
    return NumericScalar(Complex{-1.0, 0.0}) * *this;
}

NumericScalar operator+(const NumericScalar& a, const NumericScalar& b)
{
    const auto ca = a.constant();
    const auto cb = b.constant();
    if (ca && cb)
        return NumericScalar(*ca + *cb);
    if (ca && *ca == Complex{0.0, 0.0})
        return b;
    if (cb && *cb == Complex{0.0, 0.0})
        return a;
    std::vector<NumericScalar> flat;
    for (const NumericScalar* x : {&a, &b}) {
        if (const auto* inner = std::get_if<SumNode>(&x->node_->v))
            flat.insert(flat.end(), inner->terms.begin(), inner->terms.end());
        else
            flat.push_back(*x);
    }
    // Terms whose non-constant factors are the same shared nodes combine
    // their scalar multiples, so c - c cancels structurally.
    struct Combined {
        Complex scale;
        NumericScalar base;
        std::vector<const NumericScalar::Node*> key;
    };
    std::vector<Combined> combined;
    Complex constant{0.0, 0.0};
    for (const auto& t : flat) {
        if (const auto c = t.constant()) {
            constant += *c;
            continue;
        }
        Complex scale{1.0, 0.0};
        NumericScalar base = t;
        std::vector<const NumericScalar::Node*> key{t.node_.get()};
        if (const auto* p = std::get_if<ProductNode>(&t.node_->v)) {
            key.clear();
            ProductNode rest;
            for (const auto& f : p->factors) {
                if (const auto fc = f.constant())
                    scale *= *fc;
                else {
                    key.push_back(f.node_.get());
                    rest.factors.push_back(f);
                }
            }
            if (scale != Complex{1.0, 0.0})
                base = rest.factors.size() == 1
                           ? rest.factors.front()
                           : NumericScalar(std::make_shared<const NumericScalar::Node>(NumericScalar::Node{std::move(rest)}));
        }
        bool merged = false;
        for (auto& c : combined)
            if (c.key == key) {
                c.scale += scale;
                merged = true;
                break;
            }
        if (!merged)
            combined.push_back({scale, base, std::move(key)});
    }
    SumNode s;
    if (constant != Complex{0.0, 0.0})
        s.terms.emplace_back(constant);
    for (const auto& c : combined)
        if (c.scale != Complex{0.0, 0.0})
            s.terms.push_back(NumericScalar(c.scale) * c.base);
    if (s.terms.empty())
        return NumericScalar(Complex{0.0, 0.0});
    if (s.terms.size() == 1)
        return s.terms.front();
    return NumericScalar(std::make_shared<const NumericScalar::Node>(NumericScalar::Node{std::move(s)}));
}

NumericScalar operator-(const NumericScalar& a, const NumericScalar& b) { return a + (-b); }

NumericScalar operator*(const NumericScalar& a, const NumericScalar& b)
{
    const auto ca = a.constant();
    const auto cb = b.constant();
    if (ca && cb)
        return NumericScalar(*ca * *cb);
    if ((ca && *ca == Complex{0.0, 0.0}) || (cb && *cb == Complex{0.0, 0.0}))
        return NumericScalar(Complex{0.0, 0.0});
    if (ca && *ca == Complex{1.0, 0.0})
        return b;
    if (cb && *cb == Complex{1.0, 0.0})
        return a;
    ProductNode p;
    Complex scale{1.0, 0.0};
    for (const NumericScalar* x : {&a, &b}) {
        if (const auto c = x->constant())
            scale *= *c;
        else if (const auto* inner = std::get_if<ProductNode>(&x->node_->v)) {
            for (const auto& f : inner->factors) {
                if (const auto fc = f.constant())
                    scale *= *fc;
                else
                    p.factors.push_back(f);
            }
        }
        else
            p.factors.push_back(*x);
    }
    if (scale != Complex{1.0, 0.0})
        p.factors.insert(p.factors.begin(), NumericScalar(scale));
    return NumericScalar(std::make_shared<const NumericScalar::Node>(NumericScalar::Node{std::move(p)}));
}

std::string NumericScalar::to_string() const
{
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, ConstNode>) {
                os << "(" << n.value.real() << (n.value.imag() < 0 ? "" : "+") << n.value.imag() << "i)";
            }
            else if constexpr (std::is_same_v<T, LeafNode>) {
                os << n.label;
            }
            else if constexpr (std::is_same_v<T, SumNode>) {
                os << "(";
                for (size_t k = 0; k < n.terms.size(); ++k)
                    os << (k ? " + " : "") << n.terms[k].to_string();
                os << ")";
            }
            else if constexpr (std::is_same_v<T, ProductNode>) {
                for (size_t k = 0; k < n.factors.size(); ++k)
                    os << (k ? "*" : "") << n.factors[k].to_string();
            }
            else {
                os << "twist" << n.action.to_string() << "[" << n.inner.to_string() << "]";
            }
            return os.str();
        },
        node_->v);
}

} // namespace efk
