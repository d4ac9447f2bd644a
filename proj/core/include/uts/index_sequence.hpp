#ifndef UTS_INDEX_SEQUENCE_HPP
#define UTS_INDEX_SEQUENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uts/int128.hpp"
#include "uts/log_mag.hpp"

namespace uts {

// The positive-integer sequence lambda_n.  Four kinds: an explicit list,
// floor(P(n)) for a real polynomial P with P(n) -> +inf, a geometric rule
// with a ratio band theta < lambda_{n+1}/lambda_n < M, and n!.
//
// Values past the 64-bit range exist only in log form (value() throws,
// log_value() always works); wider exact values are served as Int128 while
// they fit.  polynomial_floor sequences serve only indices >= onset(), the
// computed threshold past which P is strictly increasing and >= 1.
class IndexSequence {
  public:
    enum class Kind { Explicit, PolynomialFloor, Geometric, Factorial };

    static IndexSequence explicit_list(std::vector<std::int64_t> values);
    // coeffs are ascending: P(n) = c[0] + c[1] n + ...
    static IndexSequence polynomial_floor(std::vector<double> coeffs,
                                          std::int64_t horizon);
    static IndexSequence geometric(std::int64_t first, double ratio, double theta,
                                   double bound_M, std::int64_t horizon);
    static IndexSequence factorial(std::int64_t horizon);

    Kind kind() const { return kind_; }
    std::int64_t horizon() const { return horizon_; }
    std::int64_t onset() const { return onset_; }
    double theta() const { return theta_; }
    double bound_M() const { return bound_M_; }
    const std::vector<double>& poly_coeffs() const { return poly_coeffs_; }

    // lambda_n as int64; throws OverflowError past the representable range
    std::int64_t value(std::int64_t n) const;

    // lambda_n as Int128 when representable there
    std::optional<Int128> value128(std::int64_t n) const;

    // ln(lambda_n); always available
    LogMag log_value(std::int64_t n) const;

    bool representable64(std::int64_t n) const;

    std::string describe() const;

  private:
    IndexSequence() = default;
    void check_index(std::int64_t n) const;

    Kind kind_ = Kind::Explicit;
    std::int64_t horizon_ = 0;
    std::int64_t onset_ = 1;
    std::vector<std::int64_t> values_;   // explicit
    std::vector<double> poly_coeffs_;    // polynomial_floor, ascending
    std::int64_t first_ = 1;             // geometric
    double ratio_ = 2.0;
    double theta_ = 1.0;
    double bound_M_ = 0.0;
};

// A strictly increasing stream of positive integers (n_k): the candidate
// pool the selectors draw q_k from.  Affine streams are unbounded.
class IndexStream {
  public:
    static IndexStream identity();                              // 1, 2, 3, ...
    static IndexStream affine(std::int64_t step, std::int64_t offset);  // step*k + offset
    static IndexStream explicit_list(std::vector<std::int64_t> values);

    // smallest element strictly greater than x; nullopt when exhausted
    std::optional<std::int64_t> first_greater(std::int64_t x) const;
    // smallest element with value >= x (x may be fractional)
    std::optional<std::int64_t> first_not_below(double x) const;
    bool contains(std::int64_t v) const;
    bool bounded() const { return !values_.empty(); }
    std::int64_t max_element() const;  // explicit streams only

    std::string describe() const;

  private:
    std::int64_t step_ = 1;
    std::int64_t offset_ = 0;
    std::vector<std::int64_t> values_;  // empty for affine form
};

}  // namespace uts

#endif
