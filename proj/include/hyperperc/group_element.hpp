#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperperc/presentation.hpp"

namespace hyperperc::grp {

// Run-length piece of a word in a free or free-product factor.
// gen is local to the factor; exp is nonzero (free) or in [1, order-1] (cyclic).
struct Syllable {
    int32_t gen = 0;
    int64_t exp = 0;
    bool operator==(const Syllable&) const = default;
};

// Word in one simple factor: syllables for free/free-product factors,
// a coordinate vector for lattice factors.
struct FactorWord {
    std::vector<Syllable> syl;
    std::vector<int64_t> coord;
    bool operator==(const FactorWord&) const = default;
};

// A group element stored in reduced normal form, one FactorWord per factor.
struct GroupElement {
    std::vector<FactorWord> part;
    bool operator==(const GroupElement&) const = default;
};

GroupElement identity(const Presentation& pres);

// Reduces a raw letter sequence.  Letters are signed 1-based global generator
// indices: +2 is the second generator, -2 its inverse.
GroupElement reduce(const Presentation& pres, const std::vector<int>& letters);

GroupElement mul(const Presentation& pres, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const Presentation& pres, const GroupElement& g);

// Right-multiplies by a single signed letter (hot path of ball BFS).
GroupElement mul_letter(const Presentation& pres, const GroupElement& g, int letter);

int64_t norm(const Presentation& pres, const GroupElement& g);
int64_t word_distance(const Presentation& pres, const GroupElement& g, const GroupElement& h);

// A geodesic spelling of g as signed letters, deterministic: cyclic syllables
// are spelled in the shorter direction (positive on ties), lattice coordinates
// dimension by dimension.  Used as the canonical form for ordering and hashing.
std::vector<int> canonical_letters(const Presentation& pres, const GroupElement& g);

// Canonical order: (norm, lexicographic on canonical letters).  Returns <0, 0, >0.
int compare(const Presentation& pres, const GroupElement& a, const GroupElement& b);

// Canonical letters packed into a string (hash-map key).
std::string letter_key(const Presentation& pres, const GroupElement& g);

uint64_t element_hash(const Presentation& pres, const GroupElement& g);

// Display form: generators are named a, b, c, ... in global index order;
// inverse letters rendered with ^-1 runs collapsed, e.g. "a^2 b^-1 a".
std::string to_string(const Presentation& pres, const GroupElement& g);

// Parses words like "aaba", "a^2 b^-3 a", "A" (= a^-1), "id"/"e"/"1".
GroupElement parse_word(const Presentation& pres, const std::string& text);

}  // namespace hyperperc::grp
