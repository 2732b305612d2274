#pragma once

#include <functional>
#include <vector>

#include "hyperperc/group_element.hpp"

namespace hyperperc::word {

// Reduced-word utilities on free groups.  Letters are signed 1-based global
// generator indices, as in grp::reduce; a reduced word never contains the
// pattern (+g, -g) or (-g, +g).

// Visits every reduced word of length <= max_len, starting with the empty
// word.  The buffer passed to fn is reused between calls.
void for_each_reduced(const grp::Presentation& pres, int max_len,
                      const std::function<void(const std::vector<int>&)>& fn);

// All elements of norm <= radius (resp. == radius) in canonical order
// (norm, then lexicographic letters).  Free groups only: enumeration is a
// word DFS, no ball is built.
std::vector<grp::GroupElement> ball_elements(const grp::Presentation& pres, int radius);
std::vector<grp::GroupElement> sphere_elements(const grp::Presentation& pres, int radius);

// Length of the common prefix of two letter vectors.
int common_prefix(const std::vector<int>& u, const std::vector<int>& v);

}  // namespace hyperperc::word
