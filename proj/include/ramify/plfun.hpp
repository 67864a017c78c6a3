#pragma once

// Concave nondecreasing piecewise-linear functions on [0, inf) represented as
// the lower envelope of finitely many lines with positive slope.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramify/rational.hpp"

namespace ramify {

struct Line {
    Rational intercept;
    Rational slope;

    [[nodiscard]] Rational operator()(const Rational& x) const { return intercept + slope * x; }
    bool operator==(const Line&) const = default;
};

/// Abscissa where two lines of different slope cross.
Rational crossing(const Line& a, const Line& b);

struct Vertex {
    Rational x;
    Rational y;
    bool operator==(const Vertex&) const = default;
};

class PLFunction {
public:
    /// Canonicalizes: drops lines that never form a segment of positive length
    /// of the envelope on [0, inf). Throws ValidationError on an empty set or a
    /// nonpositive slope.
    explicit PLFunction(std::vector<Line> lines);

    static PLFunction line(Rational intercept, Rational slope) { return PLFunction({{intercept, slope}}); }
    static PLFunction identity() { return line(0, 1); }
    static PLFunction from_vertices(const Rational& f0, const std::vector<Vertex>& vertices, const Rational& final_slope);

    /// Canonical lines ordered by decreasing slope, i.e. left to right.
    [[nodiscard]] const std::vector<Line>& lines() const { return lines_; }

    [[nodiscard]] Rational operator()(const Rational& x) const;
    [[nodiscard]] Rational at_zero() const { return lines_.front().intercept; }
    [[nodiscard]] Rational final_slope() const { return lines_.back().slope; }
    [[nodiscard]] std::vector<Vertex> vertices() const;

    bool operator==(const PLFunction&) const = default;

    [[nodiscard]] std::string str() const;

private:
    std::vector<Line> lines_;
};

Rational eval(const PLFunction& f, const Rational& x);

/// Pointwise minimum.
PLFunction envelope_min(const PLFunction& f, const PLFunction& g);

/// f o g, as the envelope of all composed line pairs.
PLFunction compose(const PLFunction& f, const PLFunction& g);

/// x -> m f(x / m).
PLFunction scale(const PLFunction& f, std::int64_t m);

/// x -> r f(x), r > 0.
PLFunction multiply(const PLFunction& f, const Rational& r);

std::vector<Vertex> vertices(const PLFunction& f);

/// True when line(x) >= f(x) for every x >= 0.
bool dominates(const Line& line, const PLFunction& f);

/// {"f0": [num,den], "vertices": [[xn,xd,yn,yd]...], "final_slope": s}; s is an
/// integer when integral and [num,den] otherwise.
nlohmann::json to_json(const PLFunction& f);
PLFunction plfunction_from_json(const nlohmann::json& j);

nlohmann::json rational_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

} // namespace ramify
