#pragma once

#include <string>
#include <vector>

#include "hyperperc/group_element.hpp"

namespace hyperperc::expr {

// Vertex-set mini-language for configs and the command line:
//   sphere(k)          all elements of norm k
//   ball(k)            all elements of norm <= k
//   geodesic(w, n)     powers {w^i : 0 <= i <= n}
//   word(w)            the single element w
//   union(e1, e2, ...) set union of subexpressions
//   file:path          newline-delimited word list (# comments allowed)
// Words use the same syntax as parse_word.  The result is deduplicated and
// canonically sorted.  Errors throw std::invalid_argument quoting the
// offending fragment.
std::vector<grp::GroupElement> eval_set(const grp::Presentation& pres,
                                        const std::string& text);

}  // namespace hyperperc::expr
