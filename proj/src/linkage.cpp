#include "oq/linkage.hpp"

#include <deque>
#include <map>

namespace oq {

Weight apply_reflection(const AffineReflection& r, const Weight& lambda, const RootDatum& rd) {
    if (r.modulus < 1) throw argument_error("reflection modulus must be >= 1");
    return dot_action(r.beta, r.m, r.modulus, lambda, rd);
}

namespace {

struct SearchNode {
    std::vector<coord> parent; // offset we came from
    AffineReflection via;
};

// Shared BFS downward from lambda over dot-reflection images. Visits every
// offset o (so weight lambda - Σ o_j α_j) reachable by a descending chain with
// all offset coordinates within `box`, and records parent links.
std::map<std::vector<coord>, SearchNode> explore(const Weight& lambda,
                                                 const std::vector<coord>& box, coord k,
                                                 const RootDatum& rd) {
    const std::size_t r = lambda.rank();
    std::map<std::vector<coord>, SearchNode> seen;
    std::deque<std::vector<coord>> queue;
    std::vector<coord> origin(r, 0);
    seen.emplace(origin, SearchNode{});
    queue.push_back(origin);
    while (!queue.empty()) {
        std::vector<coord> o = queue.front();
        queue.pop_front();
        Weight nu = lambda - rd.weight_of(RootCoords(o));
        Weight nu_rho = nu + rd.rho;
        for (const auto& beta : rd.positive_roots) {
            coord h = rd.pair_coroot(nu_rho, beta);
            // Smallest positive c with c ≡ h (mod k); each c gives the image
            // nu - c·β = s_{β,(h-c)/k}·nu, strictly below nu.
            coord c0 = ((h % k) + k) % k;
            if (c0 == 0) c0 = k;
            for (coord c = c0;; c += k) {
                std::vector<coord> img(r);
                bool inside = true;
                for (std::size_t j = 0; j < r; ++j) {
                    img[j] = checked_add(o[j], checked_mul(c, beta.c[j]));
                    if (img[j] > box[j]) { inside = false; break; }
                }
                if (!inside) break; // larger c only moves further down
                if (seen.count(img)) continue;
                seen.emplace(img, SearchNode{o, AffineReflection{beta, (h - c) / k, k}});
                queue.push_back(img);
            }
        }
    }
    return seen;
}

} // namespace

LinkageResult strongly_linked(const Weight& mu, const Weight& lambda, coord modulus,
                              const RootDatum& rd) {
    if (modulus < 2) throw argument_error("linkage modulus must be >= 2");
    if (mu.rank() != lambda.rank() || static_cast<std::size_t>(rd.rank) != lambda.rank())
        throw argument_error("weight rank does not match the root datum");
    if (mu == lambda) return {true, {}};
    auto target = rd.root_coords_of(lambda - mu);
    if (!target || !target->nonnegative()) return {false, {}};
    auto seen = explore(lambda, target->c, modulus, rd);
    auto hit = seen.find(target->c);
    if (hit == seen.end()) return {false, {}};
    // Walk parent links back up to lambda, emitting steps top-down.
    LinkageResult res;
    res.linked = true;
    std::vector<coord> at = target->c;
    while (at != std::vector<coord>(lambda.rank(), 0)) {
        const SearchNode& node = seen.at(at);
        Weight to = lambda - rd.weight_of(RootCoords(at));
        Weight from = lambda - rd.weight_of(RootCoords(node.parent));
        res.chain.push_back({from, node.via, to});
        at = node.parent;
    }
    std::reverse(res.chain.begin(), res.chain.end());
    return res;
}

std::set<Weight> linkage_downset(const Weight& lambda, coord modulus, const RootDatum& rd,
                                 const TruncationWindow& window) {
    if (modulus < 2) throw argument_error("linkage modulus must be >= 2");
    if (!(window.top == lambda))
        throw window_mismatch_error("linkage window must have top = lambda");
    if (window.depth < 0) throw argument_error("window depth must be nonnegative");
    std::vector<coord> box(lambda.rank(), window.depth);
    auto seen = explore(lambda, box, modulus, rd);
    std::set<Weight> out;
    for (const auto& [o, node] : seen) out.insert(lambda - rd.weight_of(RootCoords(o)));
    return out;
}

} // namespace oq
