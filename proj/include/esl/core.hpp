// Exact scalars, lines, points and the transforms that act on line families.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace esl {

/// Arbitrary-precision rational. GMP keeps every result in lowest terms with a
/// positive denominator; values built from strings are canonicalized on parse.
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);
int sign(const Rational& q);

struct PointR {
  Rational x;
  Rational y;

  friend bool operator==(const PointR&, const PointR&) = default;
};

/// The non-vertical line y = m*x + c.
struct Line {
  Rational m;
  Rational c;

  Rational eval(const Rational& x) const { return m * x + c; }
  friend bool operator==(const Line&, const Line&) = default;
};

class ParallelLines : public std::invalid_argument {
 public:
  ParallelLines() : std::invalid_argument("lines are parallel") {}
};

PointR intersect(const Line& a, const Line& b);

/// +1 if p is strictly above l, 0 if on it, -1 if strictly below.
int side_of(const Line& l, const PointR& p);

/// Orientation of the triangle (p, q, r): +1 counter-clockwise, -1 clockwise.
int orientation(const PointR& p, const PointR& q, const PointR& r);

struct Violation {
  enum class Kind { Parallel, Concurrent };
  Kind kind;
  /// Input positions; two entries for Parallel, three for Concurrent.
  std::vector<int> indices;

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

class GeneralPositionError : public std::invalid_argument {
 public:
  explicit GeneralPositionError(Violation v);
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

/// Lines in general position, stored in strictly increasing slope order.
/// Index i always refers to the i-th smallest slope.
class LineFamily {
 public:
  LineFamily() = default;

  /// Validates and sorts; throws GeneralPositionError.
  static LineFamily from_lines(std::vector<Line> lines,
                               std::optional<std::vector<int>> colors = std::nullopt);

  std::size_t size() const { return lines_.size(); }
  bool empty() const { return lines_.empty(); }
  const Line& operator[](std::size_t i) const { return lines_[i]; }
  const std::vector<Line>& lines() const { return lines_; }
  const std::optional<std::vector<int>>& colors() const { return colors_; }
  LineFamily with_colors(std::vector<int> colors) const;

  /// Sub-family on the given (strictly increasing) indices; keeps colors.
  LineFamily subfamily(std::span<const int> indices) const;

  friend bool operator==(const LineFamily&, const LineFamily&) = default;

 private:
  friend std::variant<LineFamily, Violation> check_general_position(
      std::span<const Line> lines);
  std::vector<Line> lines_;
  std::optional<std::vector<int>> colors_;
};

/// Validates a raw sequence. Violations name the lexicographically smallest
/// offending pair (parallel) or, if there is none, the smallest concurrent triple,
/// using input positions.
std::variant<LineFamily, Violation> check_general_position(std::span<const Line> lines);

/// Affine map v -> A v + b with A = [[delta, 0], [delta*t, delta^2]], delta > 0.
struct UcpTransform {
  Rational delta{1};
  Rational t{0};
  PointR b{Rational(0), Rational(0)};

  PointR apply(const PointR& p) const;
  Line apply(const Line& l) const;
};

class DegenerateOutput : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

LineFamily apply_ucp(const LineFamily& f, const UcpTransform& T);

enum class Axis { Vertical, Horizontal };

/// Reflection about x = 0 (Vertical) or y = 0 (Horizontal).
Line reflect(const Line& l, Axis axis);
PointR reflect(const PointR& p, Axis axis);
LineFamily reflect(const LineFamily& f, Axis axis);

using Matrix3 = std::array<std::array<Rational, 3>, 3>;

Matrix3 identity3();
Matrix3 multiply(const Matrix3& a, const Matrix3& b);
Rational determinant(const Matrix3& m);
/// Throws std::invalid_argument for singular input.
Matrix3 inverse(const Matrix3& m);

class MapsToInfinity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class ProducesVertical : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Image of a finite point under the homogeneous map M; nullopt at infinity.
std::optional<PointR> projective_apply(const Matrix3& M, const PointR& p);

/// Maps every line of f through M (points transform as M * (x, y, 1)).
/// Rejects maps sending an intersection point to infinity or producing a
/// vertical image line. The result is re-sorted by slope.
LineFamily projective_map(const LineFamily& f, const Matrix3& M);

/// The same, also reporting for each output index the input index it came from.
LineFamily projective_map(const LineFamily& f, const Matrix3& M, std::vector<int>& origin);

}  // namespace esl
