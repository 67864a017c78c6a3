#include "ramify/plfun.hpp"

#include <algorithm>
#include <sstream>

#include "ramify/errors.hpp"

namespace ramify {

Rational parse_rational(const std::string& text) {
    try {
        const auto slash = text.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const std::int64_t v = std::stoll(text, &used);
            if (used != text.size()) throw ValidationError("bad rational '" + text + "'");
            return v;
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        const std::int64_t a = std::stoll(num, &used);
        if (used != num.size()) throw ValidationError("bad rational '" + text + "'");
        const std::int64_t b = std::stoll(den, &used);
        if (used != den.size() || b == 0) throw ValidationError("bad rational '" + text + "'");
        return {a, b};
    } catch (const std::logic_error&) {
        throw ValidationError("bad rational '" + text + "'");
    }
}

Rational crossing(const Line& a, const Line& b) {
    if (a.slope == b.slope) throw ValidationError("crossing of parallel lines");
    return (b.intercept - a.intercept) / (a.slope - b.slope);
}

PLFunction::PLFunction(std::vector<Line> lines) {
    if (lines.empty()) throw ValidationError("PLFunction needs at least one line");
    for (const auto& l : lines)
        if (l.slope <= 0) throw ValidationError("PLFunction slopes must be positive");

    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        if (a.slope != b.slope) return a.slope > b.slope;
        return a.intercept < b.intercept;
    });
    // Slopes strictly decreasing; for each slope the lowest line survives.
    std::vector<Line> uniq;
    for (const auto& l : lines)
        if (uniq.empty() || uniq.back().slope != l.slope) uniq.push_back(l);

    std::vector<Line> hull;
    for (const auto& l : uniq) {
        // The middle line is useful only on the open interval between its crossings.
        while (hull.size() >= 2 &&
               crossing(hull[hull.size() - 1], l) <= crossing(hull[hull.size() - 2], hull[hull.size() - 1]))
            hull.pop_back();
        hull.push_back(l);
    }
    // Restrict to [0, inf): drop leading lines whose segment ends at or before 0.
    std::size_t first = 0;
    while (first + 1 < hull.size() && crossing(hull[first], hull[first + 1]) <= 0) ++first;
    lines_.assign(hull.begin() + static_cast<std::ptrdiff_t>(first), hull.end());
}

PLFunction PLFunction::from_vertices(const Rational& f0, const std::vector<Vertex>& vertices, const Rational& final_slope) {
    std::vector<Line> lines;
    Vertex prev{0, f0};
    for (const auto& v : vertices) {
        if (v.x <= prev.x) throw ValidationError("vertices must have increasing abscissas");
        const Rational s = (v.y - prev.y) / (v.x - prev.x);
        lines.push_back({prev.y - s * prev.x, s});
        prev = v;
    }
    lines.push_back({prev.y - final_slope * prev.x, final_slope});
    return PLFunction(std::move(lines));
}

Rational PLFunction::operator()(const Rational& x) const {
    Rational best = lines_.front()(x);
    for (const auto& l : lines_) best = std::min(best, l(x));
    return best;
}

std::vector<Vertex> PLFunction::vertices() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i + 1 < lines_.size(); ++i) {
        const Rational x = crossing(lines_[i], lines_[i + 1]);
        out.push_back({x, lines_[i](x)});
    }
    return out;
}

std::string PLFunction::str() const {
    std::ostringstream os;
    os << "min{";
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        if (i > 0) os << ", ";
        os << to_string(lines_[i].intercept) << " + " << to_string(lines_[i].slope) << "x";
    }
    os << "}";
    return os.str();
}

Rational eval(const PLFunction& f, const Rational& x) { return f(x); }

PLFunction envelope_min(const PLFunction& f, const PLFunction& g) {
    std::vector<Line> lines = f.lines();
    lines.insert(lines.end(), g.lines().begin(), g.lines().end());
    return PLFunction(std::move(lines));
}

PLFunction compose(const PLFunction& f, const PLFunction& g) {
    std::vector<Line> lines;
    lines.reserve(f.lines().size() * g.lines().size());
    for (const auto& outer : f.lines())
        for (const auto& inner : g.lines())
            lines.push_back({outer.intercept + outer.slope * inner.intercept, outer.slope * inner.slope});
    return PLFunction(std::move(lines));
}

PLFunction scale(const PLFunction& f, std::int64_t m) {
    if (m < 1) throw ValidationError("scale factor must be positive");
    std::vector<Line> lines = f.lines();
    for (auto& l : lines) l.intercept *= m;
    return PLFunction(std::move(lines));
}

PLFunction multiply(const PLFunction& f, const Rational& r) {
    if (r <= 0) throw ValidationError("multiplier must be positive");
    std::vector<Line> lines = f.lines();
    for (auto& l : lines) {
        l.intercept *= r;
        l.slope *= r;
    }
    return PLFunction(std::move(lines));
}

std::vector<Vertex> vertices(const PLFunction& f) { return f.vertices(); }

bool dominates(const Line& line, const PLFunction& f) {
    // f - line is concave, so its maximum sits at 0, at a vertex, or at infinity.
    if (line(0) < f(0)) return false;
    for (const auto& v : f.vertices())
        if (line(v.x) < v.y) return false;
    return line.slope >= f.final_slope();
}

nlohmann::json rational_json(const Rational& r) { return nlohmann::json::array({r.numerator(), r.denominator()}); }

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (!j.is_array() || j.size() != 2) throw ValidationError("rational must be [num, den]");
    const auto den = j[1].get<std::int64_t>();
    if (den == 0) throw ValidationError("zero denominator");
    return {j[0].get<std::int64_t>(), den};
}

nlohmann::json to_json(const PLFunction& f) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : f.vertices())
        verts.push_back({v.x.numerator(), v.x.denominator(), v.y.numerator(), v.y.denominator()});
    const Rational s = f.final_slope();
    nlohmann::json out;
    out["f0"] = rational_json(f.at_zero());
    out["vertices"] = verts;
    out["final_slope"] = s.denominator() == 1 ? nlohmann::json(s.numerator()) : rational_json(s);
    return out;
}

PLFunction plfunction_from_json(const nlohmann::json& j) {
    try {
        std::vector<Vertex> verts;
        for (const auto& v : j.at("vertices")) {
            if (v.size() != 4) throw ValidationError("vertex must be [xn, xd, yn, yd]");
            verts.push_back({Rational(v[0].get<std::int64_t>(), v[1].get<std::int64_t>()),
                             Rational(v[2].get<std::int64_t>(), v[3].get<std::int64_t>())});
        }
        return PLFunction::from_vertices(rational_from_json(j.at("f0")), verts, rational_from_json(j.at("final_slope")));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed PL function JSON: ") + e.what());
    }
}

} // namespace ramify
