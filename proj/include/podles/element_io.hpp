#ifndef PODLES_ELEMENT_IO_HPP
#define PODLES_ELEMENT_IO_HPP

#include <string>

#include "podles/groupoid_algebra.hpp"

namespace podles {

// JSON form used for fixtures and golden files:
//   {"groupoid": "O1", "terms": [{"im": 0, "m": 3, "n": -1, "re": 1}, ...]}
// with "inf" for the INF source, keys sorted, floats printed as %.17g, and
// terms in canonical arrow order, so identical elements give identical bytes.
std::string element_to_json(const AlgebraElement& f);
AlgebraElement element_from_json(const std::string& text);

// %.17g with a fixed treatment of negative zero; shared by all report writers.
std::string format_double(double v);

}  // namespace podles

#endif  // PODLES_ELEMENT_IO_HPP
