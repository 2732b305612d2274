#include "hyperperc/free_word.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperperc::word {

namespace {

void dfs(const grp::Presentation& pres, int max_len, std::vector<int>& buf,
         const std::function<void(const std::vector<int>&)>& fn) {
    fn(buf);
    if (static_cast<int>(buf.size()) == max_len) return;
    int n = pres.n_generators();
    int last = buf.empty() ? 0 : buf.back();
    for (int g = 1; g <= n; ++g)
        for (int sign : {1, -1}) {
            int letter = sign * g;
            if (letter == -last) continue;
            buf.push_back(letter);
            dfs(pres, max_len, buf, fn);
            buf.pop_back();
        }
}

}  // namespace

void for_each_reduced(const grp::Presentation& pres, int max_len,
                      const std::function<void(const std::vector<int>&)>& fn) {
    if (!pres.is_tree())
        throw std::invalid_argument("for_each_reduced: free groups only");
    std::vector<int> buf;
    buf.reserve(static_cast<size_t>(std::max(max_len, 1)));
    dfs(pres, max_len, buf, fn);
}

std::vector<grp::GroupElement> ball_elements(const grp::Presentation& pres, int radius) {
    std::vector<std::vector<int>> words;
    for_each_reduced(pres, radius, [&](const std::vector<int>& w) { words.push_back(w); });
    std::sort(words.begin(), words.end(),
              [](const std::vector<int>& u, const std::vector<int>& v) {
                  if (u.size() != v.size()) return u.size() < v.size();
                  return u < v;
              });
    std::vector<grp::GroupElement> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(grp::reduce(pres, w));
    return out;
}

std::vector<grp::GroupElement> sphere_elements(const grp::Presentation& pres, int radius) {
    std::vector<grp::GroupElement> out;
    for (auto& g : ball_elements(pres, radius))
        if (grp::norm(pres, g) == radius) out.push_back(std::move(g));
    return out;
}

int common_prefix(const std::vector<int>& u, const std::vector<int>& v) {
    size_t n = std::min(u.size(), v.size());
    size_t i = 0;
    while (i < n && u[i] == v[i]) ++i;
    return static_cast<int>(i);
}

}  // namespace hyperperc::word
