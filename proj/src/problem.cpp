#include "ndeq/problem.hpp"

#include "ndeq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ndeq {

ProblemSpec golden_example() {
    return ProblemSpec{
        SequenceSpec::alternating(1.0),
        SequenceSpec::constant(0.5),
        SequenceSpec::geometric(1.0, 0.5),
        SequenceSpec::geometric(1.0, 0.5),
        FunctionSpec::polynomial({0.0, 0.0, 0.0, 0.0, 0.0, 1.0}),
        validate_gamma(RationalExponent(1, 3)),
        validate_alpha(RationalExponent(5, 1)),
        3,
    };
}

void verify_r_nonzero(const SequenceSpec& r, std::size_t horizon) {
    switch (r.kind()) {
    case SequenceSpec::Kind::constant:
    case SequenceSpec::Kind::alternating:
    case SequenceSpec::Kind::power:
        if (r.c() == 0.0) throw hypothesis_error("r is identically zero");
        return;
    case SequenceSpec::Kind::geometric:
        if (r.c() == 0.0 || r.ratio() == 0.0)
            throw hypothesis_error("r vanishes (zero coefficient or zero ratio)");
        return;
    case SequenceSpec::Kind::table: {
        const auto& v = r.values();
        for (std::size_t i = 0; i <= horizon && i < v.size(); ++i)
            if (v[i] == 0.0)
                throw hypothesis_error("r vanishes at index " + std::to_string(i));
        if (horizon >= v.size()) {
            if (r.extend() == Extend::zero)
                throw hypothesis_error("r extends by zero past its table, but r must never vanish");
            if (r.extend() == Extend::fail)
                throw hypothesis_error("r table ends at index " + std::to_string(v.size() - 1) +
                                       " with extension rule 'error', horizon needs " +
                                       std::to_string(horizon));
            if (v.back() == 0.0)
                throw hypothesis_error("r repeats a zero value past its table");
        }
        return;
    }
    }
}

} // namespace ndeq
