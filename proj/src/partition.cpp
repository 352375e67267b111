#include "umod/partition.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace umod {

Partition Partition::top(int n, const std::vector<int>& s) {
    if (n <= 0) throw PreconditionError("partition needs a positive ground set");
    Bitset in(n);
    for (int e : s) {
        if (e < 0 || e >= n) throw PreconditionError("element out of range");
        in.set(e);
    }
    int k = in.count();
    if (k == 0 || k == n) throw PreconditionError("side must be a proper non-empty subset");
    Partition p;
    p.n = n;
    p.parts.push_back(in.to_vector());
    p.parts.push_back(in.complemented().to_vector());
    p.marks.assign(2, 0);
    return p;
}

bool Partition::valid() const {
    if (static_cast<int>(marks.size()) != static_cast<int>(parts.size())) return false;
    Bitset seen(n);
    int total = 0;
    for (const auto& part : parts) {
        if (part.empty()) return false;
        for (int e : part) {
            if (e < 0 || e >= n || seen.test(e)) return false;
            seen.set(e);
            ++total;
        }
    }
    return total == n;
}

void Partition::canonicalize() {
    std::vector<std::size_t> order(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::sort(parts[i].begin(), parts[i].end());
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return parts[a][0] < parts[b][0]; });
    std::vector<std::vector<int>> new_parts;
    std::vector<char> new_marks;
    new_parts.reserve(parts.size());
    new_marks.reserve(parts.size());
    for (std::size_t i : order) {
        new_parts.push_back(std::move(parts[i]));
        new_marks.push_back(marks[i]);
    }
    parts = std::move(new_parts);
    marks = std::move(new_marks);
}

namespace {

struct SigHash {
    std::size_t operator()(const OutsideSignature& v) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (ClassId c : v) h = (h ^ c) * 0x100000001b3ull;
        return h;
    }
};

void signature_into(const HomogeneousRelation& h, const std::vector<int>& outside, int x,
                    std::vector<ClassId>& remap, OutsideSignature& out) {
    std::fill(remap.begin(), remap.end(), kNoClass);
    out.clear();
    ClassId next = 0;
    for (int w : outside) {
        ClassId raw = h.at(x, w);
        if (remap[raw] == kNoClass) remap[raw] = next++;
        out.push_back(remap[raw]);
    }
}

}  // namespace

OutsideSignature signature(const HomogeneousRelation& h, const std::vector<int>& c, int x) {
    int n = h.size();
    Bitset in(n);
    for (int e : c) {
        if (e < 0 || e >= n) throw PreconditionError("element out of range");
        in.set(e);
    }
    if (!in.test(x)) throw PreconditionError("signature element must belong to the part");
    if (in.count() == n) throw PreconditionError("signature needs a non-empty outside");
    std::vector<int> outside = in.complemented().to_vector();
    std::vector<ClassId> remap(static_cast<std::size_t>(n), kNoClass);
    OutsideSignature out;
    signature_into(h, outside, x, remap, out);
    return out;
}

Partition refine(const HomogeneousRelation& h, const Partition& p, int index) {
    if (index < 0 || index >= static_cast<int>(p.parts.size())) throw PreconditionError("no such part");
    const std::vector<int>& c = p.parts[static_cast<std::size_t>(index)];
    int n = p.n;
    if (static_cast<int>(c.size()) <= 1 || static_cast<int>(c.size()) == n) return p;

    Bitset in = Bitset::from(c, n);
    std::vector<int> outside = in.complemented().to_vector();
    std::vector<ClassId> remap(static_cast<std::size_t>(n), kNoClass);
    OutsideSignature sig;
    // Bucket the part's elements by signature; buckets keep first-appearance
    // order, elements stay ascending.
    std::unordered_map<OutsideSignature, std::size_t, SigHash> bucket_of;
    std::vector<std::vector<int>> fragments;
    for (int x : c) {
        signature_into(h, outside, x, remap, sig);
        auto [it, inserted] = bucket_of.try_emplace(sig, fragments.size());
        if (inserted) fragments.emplace_back();
        fragments[it->second].push_back(x);
    }
    if (fragments.size() == 1) return p;

    Partition out;
    out.n = n;
    for (int i = 0; i < static_cast<int>(p.parts.size()); ++i) {
        if (i == index) {
            for (auto& f : fragments) {
                out.parts.push_back(std::move(f));
                out.marks.push_back(0);
            }
        } else {
            out.parts.push_back(p.parts[static_cast<std::size_t>(i)]);
            out.marks.push_back(p.marks[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

Partition refine(const HomogeneousRelation& h, const Partition& p, const std::vector<int>& c) {
    std::vector<int> sorted(c);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        std::vector<int> part(p.parts[i]);
        std::sort(part.begin(), part.end());
        if (part == sorted) return refine(h, p, static_cast<int>(i));
    }
    throw Error("set is not a part of the partition");
}

namespace {

Partition mu_naive(const HomogeneousRelation& h, const std::vector<int>& s) {
    Partition p = Partition::top(h.size(), s);
    for (;;) {
        int target = -1;
        for (std::size_t i = 0; i < p.parts.size(); ++i) {
            if (!p.marks[i]) {
                target = static_cast<int>(i);
                break;
            }
        }
        if (target < 0) break;
        Partition next = refine(h, p, target);
        if (next.parts.size() == p.parts.size()) {
            p.marks[static_cast<std::size_t>(target)] = 1;
        } else {
            p = std::move(next);
        }
    }
    p.canonicalize();
    return p;
}

// Shared incremental engine for the umodule and module variants. Every part
// carries a batch of still-unseen outside columns; when a part splits, each
// fragment's new batch is exactly the sibling elements, so any
// (element, column) pair is examined at most once overall.
struct BatchRefiner {
    const HomogeneousRelation& h;
    bool module_mode;
    int n;
    // Per-element first-use renormalization state (umodule mode): flat
    // n x n map from global class id to local id, plus the next free id.
    std::vector<ClassId> local_map;
    std::vector<ClassId> next_local;

    struct Part {
        std::vector<int> elems;
        std::vector<int> batch;
    };
    std::vector<Part> parts;
    std::deque<int> work;

    BatchRefiner(const HomogeneousRelation& h_, bool module_mode_)
        : h(h_), module_mode(module_mode_), n(h_.size()) {
        if (!module_mode) {
            local_map.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kNoClass);
            next_local.assign(static_cast<std::size_t>(n), 0);
        }
    }

    ClassId key(int x, int w) {
        if (module_mode) return h.at(w, x);
        ClassId raw = h.at(x, w);
        std::size_t slot = static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + raw;
        if (local_map[slot] == kNoClass) local_map[slot] = next_local[static_cast<std::size_t>(x)]++;
        return local_map[slot];
    }

    void add_part(std::vector<int> elems, std::vector<int> batch) {
        if (elems.size() <= 1) batch.clear();  // singletons never split again
        bool pending = !batch.empty();
        parts.push_back({std::move(elems), std::move(batch)});
        if (pending) work.push_back(static_cast<int>(parts.size()) - 1);
    }

    void process(int pid) {
        Part& part = parts[static_cast<std::size_t>(pid)];
        std::vector<int> batch = std::move(part.batch);
        part.batch.clear();
        // Split the part's elements column by column; groups keep ascending
        // element order, so ties resolve by element id.
        std::vector<std::vector<int>> groups{part.elems};
        std::vector<std::vector<int>> next_groups;
        std::unordered_map<ClassId, std::size_t> bucket_of;
        for (int w : batch) {
            next_groups.clear();
            for (auto& g : groups) {
                if (g.size() == 1) {
                    next_groups.push_back(std::move(g));
                    continue;
                }
                bucket_of.clear();
                for (int x : g) {
                    auto [it, inserted] = bucket_of.try_emplace(key(x, w), next_groups.size());
                    if (inserted) next_groups.emplace_back();
                    next_groups[it->second].push_back(x);
                }
            }
            groups.swap(next_groups);
        }
        if (groups.size() == 1) return;  // the whole batch kept the part intact
        // Cut: each fragment still has the sibling columns ahead of it.
        std::vector<int> parent = std::move(part.elems);
        bool reused = false;
        for (auto& g : groups) {
            Bitset frag = Bitset::from(g, n);
            std::vector<int> sibling;
            sibling.reserve(parent.size() - g.size());
            for (int e : parent)
                if (!frag.test(e)) sibling.push_back(e);
            if (!reused) {
                // Reuse the parent slot for the first fragment.
                reused = true;
                Part& slot = parts[static_cast<std::size_t>(pid)];
                slot.elems = std::move(g);
                if (slot.elems.size() <= 1) sibling.clear();
                slot.batch = std::move(sibling);
                if (!slot.batch.empty()) work.push_back(pid);
            } else {
                add_part(std::move(g), std::move(sibling));
            }
        }
    }

    Partition run(const std::vector<int>& s) {
        Partition top = Partition::top(n, s);
        add_part(top.parts[0], top.parts[1]);
        add_part(top.parts[1], top.parts[0]);
        while (!work.empty()) {
            int pid = work.front();
            work.pop_front();
            if (!parts[static_cast<std::size_t>(pid)].batch.empty()) process(pid);
        }
        Partition out;
        out.n = n;
        for (auto& part : parts) {
            out.parts.push_back(std::move(part.elems));
            out.marks.push_back(1);
        }
        out.canonicalize();
        return out;
    }
};

}  // namespace

Partition mu(const HomogeneousRelation& h, const std::vector<int>& s, MuAlgorithm alg) {
    if (alg == MuAlgorithm::naive) {
        Partition p = mu_naive(h, s);
        for (auto& m : p.marks) m = 1;
        return p;
    }
    return BatchRefiner(h, false).run(s);
}

Partition coarsest_module_partition(const HomogeneousRelation& h, const std::vector<int>& s) {
    return BatchRefiner(h, true).run(s);
}

Bitset smallest_module_containing(const HomogeneousRelation& h, const std::vector<int>& seed) {
    int n = h.size();
    if (seed.empty()) throw PreconditionError("seed must be non-empty");
    Bitset m(n);
    std::vector<int> queue;
    for (int e : seed) {
        if (e < 0 || e >= n) throw PreconditionError("element out of range");
        if (!m.test(e)) {
            m.set(e);
            queue.push_back(e);
        }
    }
    int rep = queue[0];
    // seen_color[w] caches how w views the set so each (w, member) pair is
    // compared once.
    std::vector<ClassId> seen_color(static_cast<std::size_t>(n), kNoClass);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (int w = 0; w < n; ++w) {
            if (m.test(w) || w == u) continue;
            if (seen_color[static_cast<std::size_t>(w)] == kNoClass)
                seen_color[static_cast<std::size_t>(w)] = h.at(w, rep);
            if (h.at(w, u) != seen_color[static_cast<std::size_t>(w)]) {
                m.set(w);
                queue.push_back(w);
            }
        }
    }
    return m;
}

}  // namespace umod
