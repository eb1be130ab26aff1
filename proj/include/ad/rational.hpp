#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace ad {

// Exact rational scalar used everywhere; no floating point in the core.
using Rat = mpq_class;
using Vec = std::vector<Rat>;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal mathematical inconsistencies halt instead of throwing.
[[noreturn]] void internal_failure(const char* file, int line, const std::string& msg);

#define AD_INTERNAL_CHECK(cond, msg)                                   \
    do {                                                               \
        if (!(cond)) ::ad::internal_failure(__FILE__, __LINE__, msg);  \
    } while (0)

inline Rat rat_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Combined numerator+denominator bit size, used for pivot selection.
inline size_t rat_bitsize(const Rat& q) {
    if (q == 0) return 0;
    return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
}

}  // namespace ad
