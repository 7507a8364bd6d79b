#ifndef QVLAB_REGISTRY_HPP
#define QVLAB_REGISTRY_HPP

#include <string>

#include "qvlab/harmonic.hpp"
#include "qvlab/qfun.hpp"

namespace qvlab {

/// "re", "imi", or "re+imi" with the usual sign and exponent forms; bare "i"
/// and "-i" read as the unit imaginaries. Anything else is refused with
/// errc::unknown_function (the registry's parse-failure code).
Complex parse_complex(const std::string& text);

/// '+'/'-'-joined term list, the part after "harm:m=<m>;". Terms are plain
/// numbers (degree 0), [c*]Re(z^k) / [c*]Im(z^k) for m = 2, or [c*]Y(l,mm)
/// for m = 3 with index l + mm. Grammar failures raise unknown_function;
/// out-of-range degrees and indices keep make_combo's invalid_parameter.
HarmonicCombo parse_harmonic_combo(int m, const std::string& terms);

/// Named function registry:
///   cube-root            alias of roots:3,1,0
///   dellis               alias of roots:2,2,-1
///   roots:q,a,b          branched roots of w^q = az + b, a and b complex
///   homog:alpha,profile  homogeneous wrapper; profiles const1, roots2, roots3
///   harm:m=2;<terms>     harmonic baseline, planar term list
///   harm:m=3;<terms>     harmonic baseline, solid term list
/// The returned function carries the requested id verbatim. Unknown or
/// malformed ids raise errc::unknown_function.
QFunction make_function(const std::string& id);

}  // namespace qvlab

#endif
