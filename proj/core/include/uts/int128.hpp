#ifndef UTS_INT128_HPP
#define UTS_INT128_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace uts {

// 128-bit signed integers carry sequence values past the int64 range
// (e.g. floor(P(n)) for n ~ 1e12 with quadratic P).
using Int128 = __int128;

constexpr Int128 kInt128Max = (~__int128(0)) ^ (__int128(1) << 127);

inline bool fits_int64(Int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

inline std::string to_string(Int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    char buf[48];
    int pos = 48;
    while (u > 0) {
        buf[--pos] = char('0' + int(u % 10));
        u /= 10;
    }
    std::string s(buf + pos, 48 - pos);
    return neg ? "-" + s : s;
}

inline double to_double(Int128 v) {
    return static_cast<double>(v);
}

inline Int128 parse_int128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_int128: empty string");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("parse_int128: no digits");
    Int128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("parse_int128: bad digit in \"" + s + "\"");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
}

}  // namespace uts

#endif
