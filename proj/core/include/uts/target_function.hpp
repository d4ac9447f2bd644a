#ifndef UTS_TARGET_FUNCTION_HPP
#define UTS_TARGET_FUNCTION_HPP

#include <string>
#include <vector>

#include "uts/compact_set.hpp"
#include "uts/taylor_poly.hpp"

namespace uts {

// An approximation target holomorphic on a neighborhood of the sample sets:
// a polynomial, a rational function with explicitly listed poles, or a
// truncated entire series (exponential rule).
class TargetFunction {
  public:
    enum class Kind { Polynomial, Rational, Entire };

    TargetFunction() = default;  // the zero polynomial

    static TargetFunction polynomial(TaylorPoly p);
    // numerator(z) / prod_i (z - poles[i])
    static TargetFunction rational(TaylorPoly numerator, std::vector<Complex> poles);
    // truncation of exp(scale * z) at the given order
    static TargetFunction entire_exp(Complex scale, std::int64_t order);

    Kind kind() const { return kind_; }
    Complex operator()(Complex z) const;
    const std::vector<Complex>& poles() const { return poles_; }

    // well-posedness floor: every pole at distance >= 0.1 from every node
    void validate_against(const CompactSetSample& sample) const;

    std::string describe() const;

  private:
    Kind kind_ = Kind::Polynomial;
    TaylorPoly poly_;
    std::vector<Complex> poles_;
};

}  // namespace uts

#endif
