#include "hyperperc/group_element.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace hyperperc::grp {

GroupElement identity(const Presentation& pres) {
    GroupElement g;
    g.part.resize(pres.factors().size());
    for (size_t i = 0; i < pres.factors().size(); ++i)
        if (pres.factors()[i].kind == Kind::Lattice)
            g.part[i].coord.assign(pres.factors()[i].rank, 0);
    return g;
}

// Appends one syllable to a reduced factor word, keeping it reduced.
static void append_syllable(FactorWord& w, const Factor& f, int gen, int64_t exp) {
    if (f.kind == Kind::FreeProduct) {
        int ord = f.orders[gen];
        exp = ((exp % ord) + ord) % ord;
        if (exp == 0) return;
    } else if (exp == 0) {
        return;
    }
    if (!w.syl.empty() && w.syl.back().gen == gen) {
        int64_t merged = w.syl.back().exp + exp;
        if (f.kind == Kind::FreeProduct) merged %= f.orders[gen];
        if (merged == 0)
            w.syl.pop_back();
        else
            w.syl.back().exp = merged;
    } else {
        w.syl.push_back({gen, exp});
    }
}

static void append_letter(GroupElement& g, const Presentation& pres, int letter) {
    if (letter == 0) throw std::invalid_argument("letter 0 is not a generator");
    int idx = std::abs(letter) - 1;
    if (idx >= pres.n_generators()) throw std::invalid_argument("generator index out of range");
    auto [fi, local] = pres.locate(idx);
    const Factor& f = pres.factors()[fi];
    if (f.kind == Kind::Lattice)
        g.part[fi].coord[local] += (letter > 0 ? 1 : -1);
    else
        append_syllable(g.part[fi], f, local, letter > 0 ? 1 : -1);
}

GroupElement reduce(const Presentation& pres, const std::vector<int>& letters) {
    GroupElement g = identity(pres);
    for (int l : letters) append_letter(g, pres, l);
    return g;
}

GroupElement mul(const Presentation& pres, const GroupElement& a, const GroupElement& b) {
    GroupElement g = a;
    for (size_t fi = 0; fi < pres.factors().size(); ++fi) {
        const Factor& f = pres.factors()[fi];
        if (f.kind == Kind::Lattice) {
            for (int i = 0; i < f.rank; ++i) g.part[fi].coord[i] += b.part[fi].coord[i];
        } else {
            for (const Syllable& s : b.part[fi].syl) append_syllable(g.part[fi], f, s.gen, s.exp);
        }
    }
    return g;
}

GroupElement inverse(const Presentation& pres, const GroupElement& g) {
    GroupElement r = identity(pres);
    for (size_t fi = 0; fi < pres.factors().size(); ++fi) {
        const Factor& f = pres.factors()[fi];
        if (f.kind == Kind::Lattice) {
            for (int i = 0; i < f.rank; ++i) r.part[fi].coord[i] = -g.part[fi].coord[i];
        } else {
            for (auto it = g.part[fi].syl.rbegin(); it != g.part[fi].syl.rend(); ++it)
                append_syllable(r.part[fi], f, it->gen, -it->exp);
        }
    }
    return r;
}

GroupElement mul_letter(const Presentation& pres, const GroupElement& g, int letter) {
    GroupElement r = g;
    append_letter(r, pres, letter);
    return r;
}

static int64_t syllable_norm(const Factor& f, const Syllable& s) {
    if (f.kind == Kind::FreeProduct) {
        int ord = f.orders[s.gen];
        return std::min<int64_t>(s.exp, ord - s.exp);
    }
    return std::abs(s.exp);
}

int64_t norm(const Presentation& pres, const GroupElement& g) {
    int64_t n = 0;
    for (size_t fi = 0; fi < pres.factors().size(); ++fi) {
        const Factor& f = pres.factors()[fi];
        if (f.kind == Kind::Lattice) {
            for (int64_t c : g.part[fi].coord) n += std::abs(c);
        } else {
            for (const Syllable& s : g.part[fi].syl) n += syllable_norm(f, s);
        }
    }
    return n;
}

int64_t word_distance(const Presentation& pres, const GroupElement& g, const GroupElement& h) {
    return norm(pres, mul(pres, inverse(pres, g), h));
}

std::vector<int> canonical_letters(const Presentation& pres, const GroupElement& g) {
    std::vector<int> out;
    for (size_t fi = 0; fi < pres.factors().size(); ++fi) {
        const Factor& f = pres.factors()[fi];
        int off = pres.gen_offset(static_cast<int>(fi));
        if (f.kind == Kind::Lattice) {
            for (int i = 0; i < f.rank; ++i) {
                int64_t c = g.part[fi].coord[i];
                int letter = (c > 0) ? (off + i + 1) : -(off + i + 1);
                for (int64_t k = 0; k < std::abs(c); ++k) out.push_back(letter);
            }
        } else {
            for (const Syllable& s : g.part[fi].syl) {
                int64_t e = s.exp;
                int sign = 1;
                if (f.kind == Kind::FreeProduct) {
                    int ord = f.orders[s.gen];
                    if (e > ord - e) {  // spell the shorter direction; ties go positive
                        e = ord - e;
                        sign = -1;
                    }
                } else if (e < 0) {
                    e = -e;
                    sign = -1;
                }
                int letter = sign * (off + s.gen + 1);
                for (int64_t k = 0; k < e; ++k) out.push_back(letter);
            }
        }
    }
    return out;
}

int compare(const Presentation& pres, const GroupElement& a, const GroupElement& b) {
    int64_t na = norm(pres, a), nb = norm(pres, b);
    if (na != nb) return na < nb ? -1 : 1;
    std::vector<int> la = canonical_letters(pres, a), lb = canonical_letters(pres, b);
    if (la < lb) return -1;
    if (lb < la) return 1;
    return 0;
}

std::string letter_key(const Presentation& pres, const GroupElement& g) {
    std::vector<int> letters = canonical_letters(pres, g);
    std::string key(letters.size() * sizeof(int), '\0');
    if (!letters.empty()) std::memcpy(key.data(), letters.data(), key.size());
    return key;
}

uint64_t element_hash(const Presentation& pres, const GroupElement& g) {
    // FNV-1a over the canonical letters
    uint64_t h = 14695981039346656037ull;
    for (int l : canonical_letters(pres, g)) {
        auto u = static_cast<uint32_t>(l);
        for (int b = 0; b < 4; ++b) {
            h ^= (u >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    }
    return h;
}

static std::string gen_name(int idx) {
    if (idx < 26) return std::string(1, static_cast<char>('a' + idx));
    return "g" + std::to_string(idx + 1);
}

std::string to_string(const Presentation& pres, const GroupElement& g) {
    std::vector<int> letters = canonical_letters(pres, g);
    if (letters.empty()) return "id";
    std::ostringstream os;
    for (size_t i = 0; i < letters.size();) {
        size_t j = i;
        while (j < letters.size() && letters[j] == letters[i]) ++j;
        int idx = std::abs(letters[i]) - 1;
        int64_t run = static_cast<int64_t>(j - i) * (letters[i] > 0 ? 1 : -1);
        if (i) os << ' ';
        os << gen_name(idx);
        if (run != 1) os << '^' << run;
        i = j;
    }
    return os.str();
}

GroupElement parse_word(const Presentation& pres, const std::string& text) {
    std::vector<int> letters;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (text.substr(i) == "id" || text.substr(i) == "e" || text.substr(i) == "1" || i == text.size())
        return identity(pres);
    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        char c = text[i];
        int idx, sign = 1;
        if (c >= 'a' && c <= 'z') {
            idx = c - 'a';
        } else if (c >= 'A' && c <= 'Z') {
            idx = c - 'A';
            sign = -1;
        } else {
            throw std::invalid_argument("bad character in word: '" + std::string(1, c) + "'");
        }
        if (idx >= pres.n_generators())
            throw std::invalid_argument("word uses generator '" + std::string(1, c) +
                                        "' beyond the presentation");
        ++i;
        int64_t exp = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == start) throw std::invalid_argument("missing exponent after '^'");
            exp = std::stoll(text.substr(start, i - start));
        }
        int letter = sign * (idx + 1) * (exp < 0 ? -1 : 1);
        for (int64_t k = 0; k < std::abs(exp); ++k) letters.push_back(letter);
    }
    return reduce(pres, letters);
}

}  // namespace hyperperc::grp
