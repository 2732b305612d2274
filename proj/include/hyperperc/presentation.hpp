#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hyperperc::grp {

// Supported presentation kinds.  Direct products are flat: a product of at
// most two simple (non-product) factors.
enum class Kind { Free, FreeProduct, Lattice, Product };

// One simple factor of a presentation.
struct Factor {
    Kind kind = Kind::Free;
    int rank = 0;                 // Free: generator count; Lattice: dimension
    std::array<int, 2> orders{};  // FreeProduct: the two cyclic orders

    int n_generators() const;
    bool operator==(const Factor& o) const = default;
};

class Presentation {
public:
    static Presentation free_group(int rank);
    static Presentation free_product(int m, int n);
    static Presentation lattice(int dim);
    static Presentation direct_product(const Presentation& a, const Presentation& b);

    // Parses a config literal: `free:2`, `lattice:2`, `freeprod:2,3`,
    // `product(free:2,lattice:1)`.  Throws std::invalid_argument on anything else.
    static Presentation parse(const std::string& literal);

    Kind kind() const { return kind_; }
    const std::vector<Factor>& factors() const { return factors_; }
    int n_generators() const;

    // Maps a 0-based global generator index to (factor index, local index).
    std::pair<int, int> locate(int gen) const;
    // First global generator index of a factor.
    int gen_offset(int factor) const;

    // Canonical config literal (round-trips through parse).
    std::string literal() const;

    // True iff the Cayley graph is a tree (free groups of any rank).
    bool is_tree() const { return kind_ == Kind::Free; }

    bool operator==(const Presentation& o) const = default;

private:
    Kind kind_ = Kind::Free;
    std::vector<Factor> factors_;  // one entry for simple kinds, two for Product
};

}  // namespace hyperperc::grp
