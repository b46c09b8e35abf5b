#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flipforge {

/// Exact rational number. mpq_class keeps values canonical (positive
/// denominator, reduced) after every arithmetic operation.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Sign of a rational: -1, 0, or +1.
inline int sign(const Rat& q) { return sgn(q); }

/// Serialized form used in all file formats: "num/den".
inline std::string rat_to_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "num/den" or a bare integer "num".
inline Rat rat_from_string(const std::string& s) {
    Rat q;
    std::string t = s;
    if (t.find('/') == std::string::npos) t += "/1";
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

/// Total bit length of numerator plus denominator; used to report
/// coordinate sizes of generated instances.
inline std::size_t rat_bits(const Rat& q) {
    return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
}

}  // namespace flipforge
