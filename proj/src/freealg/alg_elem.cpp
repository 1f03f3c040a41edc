#include "efk/freealg/alg_elem.hpp"

#include "efk/scalars/params.hpp"

namespace efk::freealg {

namespace {

nlohmann::json word_json(const Word& w)
{
    nlohmann::json out = nlohmann::json::array();
    for (std::uint8_t letter : w) {
        const BracketGen g = BracketGen::from_id(letter);
        out.push_back({g.i, g.j, 1});
    }
    return out;
}

// Returns the word and the accumulated orientation sign.
std::pair<Word, int> word_from_json(int n, const nlohmann::json& j)
{
    Word w;
    int sign = 1;
    for (const auto& letter : j) {
        const int a = letter.at(0).get<int>();
        const int b = letter.at(1).get<int>();
        const int s = letter.size() > 2 ? letter.at(2).get<int>() : 1;
        if (a > n || b > n)
            throw ConfigError("bracket index exceeds the rank");
        const BracketGen g = BracketGen::make(a, b);
        w.push_back(static_cast<std::uint8_t>(g.id()));
        sign *= g.sign * s;
    }
    return {w, sign};
}

} // namespace

NumericElem to_numeric(const ExactElem& e, const std::function<Complex(int, int)>& p_value)
{
    NumericElem r(e.rank());
    for (const auto& [w, c] : e.terms()) {
        if (c.is_constant()) {
            r.add_term(w, NumericScalar(Complex{c.constant_value().get_d(), 0.0}));
            continue;
        }
        const ExactScalar coeff = c;
        auto fn = [coeff, p_value](PointView xi) {
            return coeff.evaluate([&](int v) -> Complex {
                if (is_x_var(v))
                    return v < static_cast<int>(xi.size()) ? xi[v] : Complex{0.0, 0.0};
                const auto [i, j] = pair_of_var(v);
                return p_value(i, j);
            });
        };
        r.add_term(w, NumericScalar::leaf(fn, c.to_string()));
    }
    return r;
}

nlohmann::json to_json(const ExactElem& e)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [w, c] : e.terms())
        out.push_back({{"word", word_json(w)}, {"coeff", {{"exact", c.to_string()}}}});
    return out;
}

nlohmann::json to_json(const NumericElem& e)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [w, c] : e.terms()) {
        nlohmann::json coeff;
        if (const auto k = c.constant())
            coeff["numeric"] = complex_to_json(*k);
        else
            coeff["function"] = c.to_string();
        out.push_back({{"word", word_json(w)}, {"coeff", coeff}});
    }
    return out;
}

ExactElem exact_elem_from_json(int n, const nlohmann::json& j)
{
    ExactElem r(n);
    for (const auto& term : j) {
        const auto [w, sign] = word_from_json(n, term.at("word"));
        const auto& coeff = term.at("coeff");
        if (!coeff.contains("exact"))
            throw ConfigError("exact element term without an exact coefficient");
        mpq_class q;
        if (q.set_str(coeff.at("exact").get<std::string>(), 10) != 0)
            throw ConfigError("only rational constant coefficients can be read back");
        q.canonicalize();
        r.add_term(w, ExactScalar(q * sign));
    }
    return r;
}

NumericElem numeric_elem_from_json(int n, const nlohmann::json& j)
{
    NumericElem r(n);
    for (const auto& term : j) {
        const auto [w, sign] = word_from_json(n, term.at("word"));
        const auto& coeff = term.at("coeff");
        if (!coeff.contains("numeric"))
            throw ConfigError("only constant numeric coefficients can be read back");
        r.add_term(w, NumericScalar(complex_from_json(coeff.at("numeric")) * static_cast<double>(sign)));
    }
    return r;
}

} // namespace efk::freealg
