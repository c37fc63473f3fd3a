#include "nsd/workbench.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <unordered_set>

namespace nsd {

namespace {

    using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

    void need(bool ok, const std::string& message)
    {
        if (!ok)
            throw GeneratorError(message);
    }

} // namespace

std::string_view to_string(Family family)
{
    switch (family) {
    case Family::complete: return "complete";
    case Family::cycle: return "cycle";
    case Family::path: return "path";
    case Family::star: return "star";
    case Family::gnp: return "gnp";
    case Family::random_regular: return "random-regular";
    }
    return "?";
}

Family parse_family(std::string_view text)
{
    for (auto f : {Family::complete, Family::cycle, Family::path, Family::star, Family::gnp, Family::random_regular})
        if (to_string(f) == text)
            return f;
    throw GeneratorError("unknown family '" + std::string(text) + "'");
}

Graph complete_graph(int n)
{
    need(n >= 1, "complete graph needs n >= 1");
    EdgeList edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph(n, edges);
}

Graph cycle_graph(int n)
{
    need(n >= 3, "cycle needs n >= 3");
    EdgeList edges;
    for (Vertex v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return Graph(n, edges);
}

Graph path_graph(int n)
{
    need(n >= 1, "path needs n >= 1");
    EdgeList edges;
    for (Vertex v = 0; v + 1 < n; ++v)
        edges.emplace_back(v, v + 1);
    return Graph(n, edges);
}

Graph star_graph(int leaves)
{
    need(leaves >= 1, "star needs at least one leaf");
    EdgeList edges;
    for (Vertex v = 1; v <= leaves; ++v)
        edges.emplace_back(0, v);
    return Graph(leaves + 1, edges);
}

Graph gnp_graph(int n, double p, std::uint64_t seed)
{
    need(n >= 1, "gnp needs n >= 1");
    need(p >= 0.0 && p <= 1.0, "gnp needs 0 <= p <= 1");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    EdgeList edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng))
                edges.emplace_back(u, v);
    return Graph(n, edges);
}

Graph random_regular_graph(int n, int d, std::uint64_t seed, int max_attempts)
{
    need(n >= 1 && d >= 0, "random-regular needs n >= 1 and d >= 0");
    need(d < n, "random-regular needs d < n");
    need((static_cast<long long>(n) * d) % 2 == 0, "random-regular needs d*n even");
    need(max_attempts >= 1, "random-regular needs at least one attempt");

    std::mt19937_64 rng(seed);
    auto key = [n](Vertex a, Vertex b) {
        if (a > b)
            std::swap(a, b);
        return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(b);
    };

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Vertex> points;
        points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
        for (Vertex v = 0; v < n; ++v)
            points.insert(points.end(), static_cast<std::size_t>(d), v);
        std::unordered_set<std::uint64_t> present;
        present.reserve(points.size());
        EdgeList edges;
        edges.reserve(points.size() / 2);

        auto admissible = [&](std::size_t i, std::size_t j) {
            return points[i] != points[j] && !present.count(key(points[i], points[j]));
        };
        // Removes positions i and j by swapping them to the back.
        auto take = [&](std::size_t i, std::size_t j) {
            edges.emplace_back(std::min(points[i], points[j]), std::max(points[i], points[j]));
            present.insert(key(points[i], points[j]));
            if (i < j)
                std::swap(i, j);
            std::swap(points[i], points.back());
            points.pop_back();
            std::swap(points[j], points.back());
            points.pop_back();
        };

        bool stuck = false;
        while (!points.empty() && !stuck) {
            bool placed = false;
            for (int tries = 0; tries < 64 && !placed; ++tries) {
                std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
                auto i = pick(rng);
                auto j = pick(rng);
                if (i != j && admissible(i, j)) {
                    take(i, j);
                    placed = true;
                }
            }
            if (placed)
                continue;
            // Random probing keeps failing: list the admissible pairs, if any.
            std::vector<std::pair<std::size_t, std::size_t>> open;
            for (std::size_t i = 0; i < points.size(); ++i)
                for (std::size_t j = i + 1; j < points.size(); ++j)
                    if (admissible(i, j))
                        open.emplace_back(i, j);
            if (open.empty()) {
                stuck = true;
            } else {
                std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
                auto [i, j] = open[pick(rng)];
                take(i, j);
            }
        }
        if (!stuck)
            return Graph(n, edges);
    }
    throw GeneratorError("random-regular pairing failed after " + std::to_string(max_attempts) + " attempts");
}

Graph generate(Family family, const GenerateParams& params, std::uint64_t seed)
{
    switch (family) {
    case Family::complete: return complete_graph(params.n);
    case Family::cycle: return cycle_graph(params.n);
    case Family::path: return path_graph(params.n);
    case Family::star: return star_graph(params.n);
    case Family::gnp: return gnp_graph(params.n, params.p, seed);
    case Family::random_regular: return random_regular_graph(params.n, params.d, seed, params.max_attempts);
    }
    throw GeneratorError("unknown family");
}

std::vector<Graph> connected_graphs(int n)
{
    need(n >= 1 && n <= 6, "connected_graphs supports 1 <= n <= 6");
    std::vector<std::pair<Vertex, Vertex>> slots;
    std::vector<std::vector<int>> slot_of(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            slot_of[u][v] = slot_of[v][u] = static_cast<int>(slots.size());
            slots.emplace_back(u, v);
        }

    std::vector<std::vector<int>> perms;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do
        perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    auto connected = [&](std::uint32_t mask) {
        std::uint32_t seen = 1;
        for (bool grown = true; grown;) {
            grown = false;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (!(mask >> s & 1U))
                    continue;
                auto a = 1U << slots[s].first;
                auto b = 1U << slots[s].second;
                if (((seen & a) != 0) != ((seen & b) != 0)) {
                    seen |= a | b;
                    grown = true;
                }
            }
        }
        return seen == (1U << n) - 1;
    };

    std::vector<std::pair<int, std::uint32_t>> found; // (edge count, canonical mask)
    std::unordered_set<std::uint32_t> canon_seen;
    for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
        if (!connected(mask))
            continue;
        std::uint32_t best = mask;
        for (const auto& p : perms) {
            std::uint32_t image = 0;
            for (std::size_t s = 0; s < slots.size(); ++s)
                if (mask >> s & 1U)
                    image |= 1U << slot_of[p[slots[s].first]][p[slots[s].second]];
            best = std::min(best, image);
        }
        if (canon_seen.insert(best).second)
            found.emplace_back(std::popcount(best), best);
    }
    std::sort(found.begin(), found.end());

    std::vector<Graph> out;
    for (auto [count, mask] : found) {
        EdgeList edges;
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (mask >> s & 1U)
                edges.push_back(slots[s]);
        out.emplace_back(n, edges);
    }
    return out;
}

bool is_c5(const Graph& g)
{
    if (g.vertex_count() != 5 || g.edge_count() != 5)
        return false;
    for (Vertex v = 0; v < 5; ++v)
        if (g.degree(v) != 2)
            return false;
    // 2-regular on five vertices is either C5 or a union of smaller cycles,
    // which cannot exist here since the smallest cycle has three vertices.
    return true;
}

} // namespace nsd
