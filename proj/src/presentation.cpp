#include "hyperperc/presentation.hpp"

#include <sstream>
#include <stdexcept>

namespace hyperperc::grp {

int Factor::n_generators() const {
    switch (kind) {
        case Kind::Free: return rank;
        case Kind::Lattice: return rank;
        case Kind::FreeProduct: return 2;
        default: throw std::logic_error("Factor cannot be a product");
    }
}

static void check_positive(int v, const char* what) {
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

Presentation Presentation::free_group(int rank) {
    check_positive(rank, "free group rank");
    Presentation p;
    p.kind_ = Kind::Free;
    p.factors_ = {Factor{Kind::Free, rank, {}}};
    return p;
}

Presentation Presentation::free_product(int m, int n) {
    check_positive(m, "cyclic order");
    check_positive(n, "cyclic order");
    if (m < 2 || n < 2)
        throw std::invalid_argument("free product factors of order 1 are trivial; use orders >= 2");
    Presentation p;
    p.kind_ = Kind::FreeProduct;
    p.factors_ = {Factor{Kind::FreeProduct, 0, {m, n}}};
    return p;
}

Presentation Presentation::lattice(int dim) {
    check_positive(dim, "lattice dimension");
    Presentation p;
    p.kind_ = Kind::Lattice;
    p.factors_ = {Factor{Kind::Lattice, dim, {}}};
    return p;
}

Presentation Presentation::direct_product(const Presentation& a, const Presentation& b) {
    if (a.kind_ == Kind::Product || b.kind_ == Kind::Product)
        throw std::invalid_argument("direct product nesting depth is capped at 2");
    Presentation p;
    p.kind_ = Kind::Product;
    p.factors_ = {a.factors_[0], b.factors_[0]};
    return p;
}

int Presentation::n_generators() const {
    int n = 0;
    for (const auto& f : factors_) n += f.n_generators();
    return n;
}

std::pair<int, int> Presentation::locate(int gen) const {
    int off = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        int n = factors_[i].n_generators();
        if (gen < off + n) return {static_cast<int>(i), gen - off};
        off += n;
    }
    throw std::invalid_argument("generator index out of range");
}

int Presentation::gen_offset(int factor) const {
    int off = 0;
    for (int i = 0; i < factor; ++i) off += factors_[i].n_generators();
    return off;
}

static std::string factor_literal(const Factor& f) {
    std::ostringstream os;
    switch (f.kind) {
        case Kind::Free: os << "free:" << f.rank; break;
        case Kind::Lattice: os << "lattice:" << f.rank; break;
        case Kind::FreeProduct: os << "freeprod:" << f.orders[0] << "," << f.orders[1]; break;
        default: throw std::logic_error("bad factor");
    }
    return os.str();
}

std::string Presentation::literal() const {
    if (kind_ == Kind::Product)
        return "product(" + factor_literal(factors_[0]) + "," + factor_literal(factors_[1]) + ")";
    return factor_literal(factors_[0]);
}

static int parse_int(const std::string& s) {
    size_t pos = 0;
    int v;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer in presentation literal: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("bad integer in presentation literal: '" + s + "'");
    return v;
}

static Presentation parse_simple(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad presentation literal: '" + s + "'");
    std::string head = s.substr(0, colon), args = s.substr(colon + 1);
    if (head == "free") return Presentation::free_group(parse_int(args));
    if (head == "lattice") return Presentation::lattice(parse_int(args));
    if (head == "freeprod") {
        auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("freeprod needs two orders: '" + s + "'");
        return Presentation::free_product(parse_int(args.substr(0, comma)),
                                          parse_int(args.substr(comma + 1)));
    }
    throw std::invalid_argument("unknown presentation kind: '" + head + "'");
}

Presentation Presentation::parse(const std::string& literal) {
    std::string s;
    for (char c : literal)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.rfind("product(", 0) == 0) {
        if (s.back() != ')') throw std::invalid_argument("unbalanced product(...) literal");
        std::string inner = s.substr(8, s.size() - 9);
        // split on the comma separating two simple literals; freeprod args also
        // contain commas, so split at the comma that follows a complete literal.
        int depth = 0;
        size_t split = std::string::npos;
        for (size_t i = 0; i < inner.size(); ++i) {
            char c = inner[i];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                // a freeprod literal owns the comma between its two orders
                std::string left = inner.substr(0, i);
                if (left.rfind("freeprod:", 0) == 0 && left.find(',') == std::string::npos) continue;
                split = i;
                break;
            }
        }
        if (split == std::string::npos)
            throw std::invalid_argument("product literal needs two factors: '" + literal + "'");
        return direct_product(parse_simple(inner.substr(0, split)),
                              parse_simple(inner.substr(split + 1)));
    }
    return parse_simple(s);
}

}  // namespace hyperperc::grp
