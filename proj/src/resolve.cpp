#include "mdkit/resolve.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "mdkit/error.hpp"

namespace mdkit {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

void check_ids(int n, std::span<const Vertex> s) {
  for (Vertex v : s) {
    if (v < 0 || v >= n) throw InputError("invalid vertex id " + std::to_string(v));
  }
}

std::int64_t pairs_in(std::int64_t run) { return run * (run - 1) / 2; }

// Search state for the hitting-set branch and bound.
class HittingSetSearch {
 public:
  HittingSetSearch(int universe, std::vector<Bits> sets, std::optional<std::uint64_t> node_cap)
      : universe_(universe), sets_(std::move(sets)), node_cap_(node_cap),
        chosen_(universe), forbidden_(universe) {}

  // Finds a hitting set of size <= target, if one exists.
  std::optional<std::vector<Vertex>> run(int target) {
    target_ = target;
    chosen_.reset();
    forbidden_.reset();
    picks_.clear();
    if (dfs()) return picks_;
    return std::nullopt;
  }

  // Packing bound at the root: disjoint sets, smallest first.
  int root_lower_bound() const {
    std::vector<int> order(sets_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sets_[a].count() < sets_[b].count(); });
    Bits used(universe_);
    int packed = 0;
    for (int i : order) {
      if (!sets_[i].intersects(used)) {
        used |= sets_[i];
        ++packed;
      }
    }
    return packed;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool dfs() {
    if (node_cap_ && nodes_ >= *node_cap_) {
      throw ResourceLimit("node cap of " + std::to_string(*node_cap_) + " exceeded");
    }
    ++nodes_;

    // Unhit sets, restricted to vertices not excluded on this branch.
    struct Open {
      std::size_t count;
      Bits avail;
    };
    std::vector<Open> open;
    for (const Bits& s : sets_) {
      if (s.intersects(chosen_)) continue;
      Bits avail = s - forbidden_;
      std::size_t c = avail.count();
      if (c == 0) return false;
      open.push_back({c, std::move(avail)});
    }
    if (open.empty()) return true;
    const int room = target_ - static_cast<int>(picks_.size());
    if (room <= 0) return false;

    std::stable_sort(open.begin(), open.end(),
                     [](const Open& a, const Open& b) { return a.count < b.count; });
    Bits used(universe_);
    int packed = 0;
    for (const Open& o : open) {
      if (!o.avail.intersects(used)) {
        used |= o.avail;
        if (++packed > room) return false;
      }
    }

    const Bits branch = open.front().avail;
    std::vector<Vertex> excluded;
    bool found = false;
    for (auto v = branch.find_first(); v != Bits::npos; v = branch.find_next(v)) {
      chosen_.set(v);
      picks_.push_back(static_cast<Vertex>(v));
      if (dfs()) {
        found = true;
        break;
      }
      picks_.pop_back();
      chosen_.reset(v);
      forbidden_.set(v);
      excluded.push_back(static_cast<Vertex>(v));
    }
    for (Vertex v : excluded) forbidden_.reset(v);
    return found;
  }

  int universe_;
  std::vector<Bits> sets_;
  std::optional<std::uint64_t> node_cap_;
  Bits chosen_;
  Bits forbidden_;
  std::vector<Vertex> picks_;
  int target_ = 0;
  std::uint64_t nodes_ = 0;
};

// Drops duplicate sets and any set containing another one; hitting the
// minimal sets hits everything.
std::vector<Bits> minimal_sets(const DistinguishingInstance& inst) {
  std::vector<Bits> all;
  all.reserve(inst.sets.size());
  for (const auto& s : inst.sets) {
    Bits b(inst.universe);
    for (Vertex v : s) b.set(v);
    all.push_back(std::move(b));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Bits& a, const Bits& b) { return a.count() < b.count(); });
  std::vector<Bits> kept;
  for (Bits& b : all) {
    bool dominated = std::any_of(kept.begin(), kept.end(),
                                 [&](const Bits& k) { return k.is_subset_of(b); });
    if (!dominated) kept.push_back(std::move(b));
  }
  return kept;
}

}  // namespace

std::vector<Dist> distance_vector(const DistanceMatrix& d, std::span<const Vertex> s, Vertex v) {
  check_ids(d.size(), s);
  if (v < 0 || v >= d.size()) throw InputError("invalid vertex id " + std::to_string(v));
  std::vector<Dist> out;
  out.reserve(s.size());
  for (Vertex x : s) out.push_back(d(x, v));
  return out;
}

std::vector<Dist> distance_vector(const Graph& g, std::span<const Vertex> s, Vertex v) {
  check_ids(g.vertex_count(), s);
  if (!g.contains(v)) throw InputError("invalid vertex id " + std::to_string(v));
  std::vector<Dist> out;
  out.reserve(s.size());
  for (Vertex x : s) out.push_back(bfs_distances(g, x)[v]);
  return out;
}

ResolvingCertificate is_resolving_set(const DistanceMatrix& d, std::span<const Vertex> s) {
  const int n = d.size();
  check_ids(n, s);
  ResolvingCertificate cert;
  cert.vertices.assign(s.begin(), s.end());

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](Vertex a, Vertex b) {
    for (Vertex x : s) {
      if (d(x, a) != d(x, b)) return d(x, a) < d(x, b);
    }
    return a < b;
  };
  auto same = [&](Vertex a, Vertex b) {
    return std::all_of(s.begin(), s.end(), [&](Vertex x) { return d(x, a) == d(x, b); });
  };
  std::sort(order.begin(), order.end(), less);

  // Within a group of equal vectors ids are ascending, so the group's first
  // two members form its smallest pair.
  std::optional<Edge> best;
  for (int i = 0; i + 1 < n;) {
    int j = i + 1;
    while (j < n && same(order[i], order[j])) ++j;
    if (j - i >= 2) {
      Edge candidate{order[i], order[i + 1]};
      if (!best || candidate < *best) best = candidate;
    }
    i = j;
  }
  cert.verified = !best.has_value();
  cert.witness_pair = best;
  return cert;
}

ResolvingCertificate is_resolving_set(const Graph& g, std::span<const Vertex> s) {
  check_ids(g.vertex_count(), s);
  return is_resolving_set(all_pairs_distances(g), s);
}

std::vector<Edge> mandatory_pair_constraints(const Graph& g) {
  TwinReport t = twins(g);
  std::vector<Edge> out = std::move(t.true_twin_pairs);
  out.insert(out.end(), t.false_twin_pairs.begin(), t.false_twin_pairs.end());
  std::sort(out.begin(), out.end());
  return out;
}

DistinguishingInstance build_distinguishing_instance(const DistanceMatrix& d) {
  const int n = d.size();
  DistinguishingInstance inst;
  inst.universe = n;
  std::map<std::vector<Vertex>, int> index;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      std::vector<Vertex> resolvers;
      for (Vertex w = 0; w < n; ++w) {
        if (d(w, u) != d(w, v)) resolvers.push_back(w);
      }
      if (resolvers.empty()) inst.unresolvable_pairs.emplace_back(u, v);
      auto [it, inserted] = index.try_emplace(resolvers, static_cast<int>(inst.sets.size()));
      if (inserted) inst.sets.push_back(resolvers);
      inst.pairs.emplace_back(u, v);
      inst.set_of_pair.push_back(it->second);
    }
  }
  return inst;
}

DistinguishingInstance build_distinguishing_instance(const Graph& g) {
  return build_distinguishing_instance(all_pairs_distances(g));
}

std::vector<Vertex> greedy_upper_bound(const DistanceMatrix& d) {
  const int n = d.size();
  std::vector<Vertex> picked;
  if (n < 2) return picked;

  // Unresolved pairs are exactly the pairs inside a class of equal vectors.
  std::vector<std::int64_t> cls(n, 0);
  std::vector<std::pair<std::int64_t, Dist>> keys(n);
  auto refined_pairs = [&](Vertex w) {
    for (Vertex x = 0; x < n; ++x) keys[x] = {cls[x], d(w, x)};
    std::sort(keys.begin(), keys.end());
    std::int64_t same = 0;
    for (int i = 0; i < n;) {
      int j = i;
      while (j < n && keys[j] == keys[i]) ++j;
      same += pairs_in(j - i);
      i = j;
    }
    return same;
  };
  std::int64_t unresolved = pairs_in(n);
  while (unresolved > 0) {
    Vertex best = -1;
    std::int64_t best_left = unresolved;
    for (Vertex w = 0; w < n; ++w) {
      std::int64_t left = refined_pairs(w);
      if (left < best_left) {
        best_left = left;
        best = w;
      }
    }
    // Every unresolved pair is resolved by its own members, so progress is
    // guaranteed; a stall means a corrupt matrix.
    if (best < 0) throw std::logic_error("greedy_upper_bound: no progress");
    picked.push_back(best);
    std::map<std::pair<std::int64_t, Dist>, std::int64_t> relabel;
    for (Vertex x = 0; x < n; ++x) {
      auto key = std::make_pair(cls[x], d(best, x));
      auto [it, _] = relabel.try_emplace(key, static_cast<std::int64_t>(relabel.size()));
      cls[x] = it->second;
    }
    unresolved = best_left;
  }
  return picked;
}

std::vector<Vertex> greedy_upper_bound(const Graph& g) {
  return greedy_upper_bound(all_pairs_distances(g));
}

std::string to_string(MdStatus s) {
  return s == MdStatus::kExact ? "EXACT" : "EXCEEDS_BOUND";
}

MdResult metric_dimension_exact(const Graph& g, const MdOptions& options) {
  MdResult result;
  result.bound = options.bound;
  const int n = g.vertex_count();
  if (n <= 1) {
    if (n == 1) result.flags.push_back("single_vertex");
    if (options.bound && *options.bound < 0) {
      result.status = MdStatus::kExceedsBound;
      return result;
    }
    result.status = MdStatus::kExact;
    result.value = 0;
    result.certificate.verified = true;
    return result;
  }
  if (component_count(g) > 1) result.flags.push_back("disconnected");

  const DistanceMatrix d = all_pairs_distances(g);
  const DistinguishingInstance inst = build_distinguishing_instance(d);
  HittingSetSearch search(n, minimal_sets(inst), options.node_cap);

  const std::vector<Vertex> greedy = greedy_upper_bound(d);
  const int upper = static_cast<int>(greedy.size());
  int limit = upper - 1;
  if (options.bound) limit = std::min(limit, *options.bound);

  auto finish_exact = [&](std::vector<Vertex> set) {
    std::sort(set.begin(), set.end());
    result.status = MdStatus::kExact;
    result.value = static_cast<int>(set.size());
    result.certificate = is_resolving_set(d, set);
    result.explored_nodes = search.nodes();
    return result;
  };

  for (int target = search.root_lower_bound(); target <= limit; ++target) {
    if (auto found = search.run(target)) return finish_exact(std::move(*found));
  }
  if (!options.bound || upper <= *options.bound) return finish_exact(greedy);

  result.status = MdStatus::kExceedsBound;
  result.explored_nodes = search.nodes();
  return result;
}

}  // namespace mdkit
