#include "pmc/history_tree.hh"

#include <algorithm>
#include <cassert>
#include <map>
#include <unordered_map>

#include "pmc/error.hh"

namespace pmc {

namespace {

bool name_less(const NodeName& a, const NodeName& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool is_prefix(const NodeName& pre, const NodeName& name) {
    if (pre.size() > name.size())
        return false;
    return std::equal(pre.begin(), pre.end(), name.begin());
}

}  // namespace

HistoryTree::HistoryTree(std::vector<NodeName> names, std::vector<Bitset> labels,
                         std::vector<int> indices)
    : names_(std::move(names)), labels_(std::move(labels)),
      indices_(std::move(indices)) {
    assert(names_.size() == labels_.size() && names_.size() == indices_.size());
    assert(!names_.empty() && names_[0].empty());
    assert(std::is_sorted(names_.begin(), names_.end(), name_less));
}

int HistoryTree::parent(int node) const {
    if (node == 0)
        return -1;
    NodeName pname(names_[node].begin(), names_[node].end() - 1);
    auto it = std::lower_bound(names_.begin(), names_.end(), pname, name_less);
    assert(it != names_.end() && *it == pname);
    return static_cast<int>(it - names_.begin());
}

std::vector<int> HistoryTree::children(int node) const {
    std::vector<int> out;
    const NodeName& pname = names_[node];
    for (int i = node + 1; i < node_count(); ++i) {
        if (!is_prefix(pname, names_[i]))
            break;
        if (names_[i].size() == pname.size() + 1)
            out.push_back(i);
    }
    return out;
}

bool HistoryTree::well_formed() const {
    if (names_.empty() || !names_[0].empty())
        return false;
    for (int v = 0; v < node_count(); ++v) {
        if (labels_[v].none())
            return false;
        // Closure under predecessors and older siblings.
        if (v > 0) {
            NodeName pred(names_[v].begin(), names_[v].end() - 1);
            if (!std::binary_search(names_.begin(), names_.end(), pred, name_less))
                return false;
            if (names_[v].back() > 0) {
                NodeName older = names_[v];
                --older.back();
                if (!std::binary_search(names_.begin(), names_.end(), older, name_less))
                    return false;
            }
        }
        std::vector<int> kids = children(v);
        Bitset united(labels_[v].size());
        for (std::size_t i = 0; i < kids.size(); ++i) {
            const Bitset& kid = labels_[kids[i]];
            // Strict containment in the parent, disjoint siblings.
            if (!kid.is_subset_of(labels_[v]) || kid == labels_[v])
                return false;
            if (united.intersects(kid))
                return false;
            united |= kid;
        }
        // The children never exhaust the parent label.
        if (!kids.empty() && united == labels_[v])
            return false;
    }
    return true;
}

std::size_t HistoryTree::hash() const {
    std::size_t h = 0x2545f4914f6cdd1dull;
    for (int v = 0; v < node_count(); ++v) {
        for (int part : names_[v])
            h = h * 31 + static_cast<std::size_t>(part) + 17;
        h = h * 31 + labels_[v].hash();
        h = h * 31 + static_cast<std::size_t>(indices_[v]);
    }
    return h;
}

HistoryTree initial_history_tree(const Ngba& automaton) {
    return HistoryTree({NodeName{}}, {automaton.initial()}, {0});
}

HistoryTree history_tree_with_root(const Ngba& automaton, const Bitset& root) {
    if (root.none())
        throw InputError("history tree root label must be non-empty");
    (void)automaton;
    return HistoryTree({NodeName{}}, {root}, {0});
}

namespace {

struct WorkNode {
    NodeName name;
    int parent;       // index into the work array, -1 for the root
    Bitset label;
    int index;        // active accepting index
    bool from_source; // existed in the source tree
    bool removed = false;
    bool accepted = false;
};

}  // namespace

std::optional<HistoryTreeStep> history_tree_successor(const HistoryTree& tree,
                                                      Symbol symbol,
                                                      const Ngba& automaton) {
    const int n = automaton.state_count();
    if (automaton.successors(tree.reached(), symbol).none())
        return std::nullopt;

    // Raw update and sprouting, both reading the source labels. The sprout
    // of node v becomes its youngest child and tracks the accepting
    // successors of the active index of v.
    std::vector<WorkNode> work;
    work.reserve(tree.node_count() * 2);
    std::vector<int> source_pos(tree.node_count());
    for (int v = 0; v < tree.node_count(); ++v) {
        int parent = tree.parent(v);
        source_pos[v] = static_cast<int>(work.size());
        work.push_back({tree.name(v), parent < 0 ? -1 : source_pos[parent],
                        automaton.successors(tree.label(v), symbol), tree.index(v),
                        true});
    }
    for (int v = 0; v < tree.node_count(); ++v) {
        NodeName sprout = tree.name(v);
        sprout.push_back(static_cast<int>(tree.children(v).size()));
        work.push_back({std::move(sprout), source_pos[v],
                        automaton.acc_successors(tree.label(v), symbol, tree.index(v)),
                        0, false});
    }

    // Rebuild child lists in sibling order.
    std::sort(work.begin() + tree.node_count(), work.end(),
              [](const WorkNode& a, const WorkNode& b) {
                  return name_less(a.name, b.name);
              });
    // Sorting the tail invalidated parent indices; recompute from names.
    std::map<NodeName, int> position;
    for (std::size_t i = 0; i < work.size(); ++i)
        position[work[i].name] = static_cast<int>(i);
    std::vector<std::vector<int>> kids(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) {
        if (work[i].name.empty()) {
            work[i].parent = -1;
            continue;
        }
        NodeName pname(work[i].name.begin(), work[i].name.end() - 1);
        work[i].parent = position.at(pname);
        kids[work[i].parent].push_back(static_cast<int>(i));
    }
    for (auto& list : kids)
        std::sort(list.begin(), list.end(), [&](int a, int b) {
            return work[a].name.back() < work[b].name.back();
        });

    // Stealing: a state is kept only in the oldest sibling branch holding
    // it. Removal sets accumulate the pre-steal labels of older siblings
    // along the path from the root.
    std::vector<Bitset> pre_steal;
    pre_steal.reserve(work.size());
    for (const WorkNode& w : work)
        pre_steal.push_back(w.label);
    std::vector<std::pair<int, Bitset>> steal_stack;
    steal_stack.push_back({position.at(NodeName{}), Bitset(n)});
    while (!steal_stack.empty()) {
        auto [v, stolen] = std::move(steal_stack.back());
        steal_stack.pop_back();
        work[v].label -= stolen;
        Bitset accumulated = std::move(stolen);
        for (int child : kids[v]) {
            steal_stack.push_back({child, accumulated});
            accumulated |= pre_steal[child];
        }
    }

    // Accepting and removing: a node whose (non-empty) label equals the
    // union of its children's labels fires, drops all descendants, and
    // advances its accepting index.
    std::vector<int> dfs;
    dfs.push_back(position.at(NodeName{}));
    while (!dfs.empty()) {
        int v = dfs.back();
        dfs.pop_back();
        if (work[v].removed)
            continue;
        Bitset united(n);
        for (int child : kids[v])
            united |= work[child].label;
        if (work[v].label.any() && united == work[v].label) {
            work[v].accepted = true;
            work[v].index = (work[v].index + 1) % automaton.acc_count();
            // Drop the whole subtree below v.
            std::vector<int> sub(kids[v]);
            while (!sub.empty()) {
                int u = sub.back();
                sub.pop_back();
                work[u].removed = true;
                for (int child : kids[u])
                    sub.push_back(child);
            }
        } else {
            for (int child : kids[v])
                dfs.push_back(child);
        }
    }

    // Removing nodes with empty labels (their subtrees are empty as well).
    for (WorkNode& w : work)
        if (!w.removed && w.label.none())
            w.removed = true;

    // Renaming: recompute names from the surviving sibling order.
    std::vector<int> survivors;
    for (std::size_t i = 0; i < work.size(); ++i)
        if (!work[i].removed)
            survivors.push_back(static_cast<int>(i));
    std::vector<NodeName> new_names(work.size());
    for (int v : survivors) {
        if (work[v].parent < 0) {
            new_names[v] = {};
            continue;
        }
        // Parents precede children in DFS name order, so theirs are done.
        NodeName out = new_names[work[v].parent];
        int older = 0;
        for (int sib : kids[work[v].parent]) {
            if (sib == v)
                break;
            if (!work[sib].removed)
                ++older;
        }
        out.push_back(older);
        new_names[v] = std::move(out);
    }

    HistoryTreeStep step;
    std::vector<std::tuple<NodeName, Bitset, int>> nodes;
    for (int v : survivors) {
        bool stable = work[v].from_source && new_names[v] == work[v].name;
        if (stable)
            step.stable.push_back(work[v].name);
        else
            step.rejecting.push_back(work[v].name);
        if (work[v].accepted && stable)
            step.accepting.push_back(work[v].name);
        nodes.push_back({new_names[v], work[v].label, work[v].index});
    }
    for (std::size_t i = 0; i < work.size(); ++i)
        if (work[i].removed)
            step.rejecting.push_back(work[i].name);
    std::sort(step.rejecting.begin(), step.rejecting.end(), name_less);
    step.rejecting.erase(std::unique(step.rejecting.begin(), step.rejecting.end()),
                         step.rejecting.end());

    std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) {
        return name_less(std::get<0>(a), std::get<0>(b));
    });
    std::vector<NodeName> names;
    std::vector<Bitset> labels;
    std::vector<int> indices;
    for (auto& [name, label, index] : nodes) {
        names.push_back(std::move(name));
        labels.push_back(std::move(label));
        indices.push_back(index);
    }
    step.tree = HistoryTree(std::move(names), std::move(labels), std::move(indices));
    assert(step.tree.well_formed());
    return step;
}

namespace {

struct NameRegistry {
    std::map<NodeName, int> ids;

    int intern(const NodeName& name) {
        auto it = ids.find(name);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(ids.size());
        if (id >= 64)
            throw InputError("Rabin determinization exceeds 64 tracked node names");
        ids.emplace(name, id);
        return id;
    }
};

}  // namespace

std::vector<HistoryTree> reachable_history_trees(const Ngba& automaton,
                                                 const HistoryTree& init) {
    std::vector<HistoryTree> trees;
    std::unordered_map<HistoryTree, int, HistoryTreeHash> ids;
    trees.push_back(init);
    ids.emplace(init, 0);
    const Symbol symbols = static_cast<Symbol>(automaton.alphabet().symbol_count());
    for (std::size_t at = 0; at < trees.size(); ++at) {
        HistoryTree tree = trees[at];
        for (Symbol s = 0; s < symbols; ++s) {
            auto step = history_tree_successor(tree, s, automaton);
            if (!step)
                continue;
            if (ids.emplace(step->tree, static_cast<int>(trees.size())).second)
                trees.push_back(step->tree);
        }
    }
    return trees;
}

DetAutomaton determinize_rabin(const Ngba& automaton, const HistoryTree& init) {
    std::vector<HistoryTree> trees;
    std::unordered_map<HistoryTree, int, HistoryTreeHash> ids;
    trees.push_back(init);
    ids.emplace(init, 0);

    NameRegistry registry;
    for (int v = 0; v < init.node_count(); ++v)
        registry.intern(init.name(v));

    struct RawEdge {
        int src;
        Symbol symbol;
        int dst;
        std::uint64_t acc_bits;
        std::uint64_t stable_bits;
    };
    std::vector<RawEdge> raw;

    const Symbol symbols = static_cast<Symbol>(automaton.alphabet().symbol_count());
    for (std::size_t at = 0; at < trees.size(); ++at) {
        HistoryTree tree = trees[at];
        for (Symbol s = 0; s < symbols; ++s) {
            auto step = history_tree_successor(tree, s, automaton);
            if (!step)
                continue;
            auto [it, fresh] = ids.emplace(step->tree, static_cast<int>(trees.size()));
            if (fresh)
                trees.push_back(step->tree);
            int dst = it->second;
            for (int v = 0; v < step->tree.node_count(); ++v)
                registry.intern(step->tree.name(v));
            std::uint64_t acc = 0, stable = 0;
            for (const NodeName& name : step->accepting)
                acc |= std::uint64_t(1) << registry.intern(name);
            for (const NodeName& name : step->stable)
                stable |= std::uint64_t(1) << registry.intern(name);
            raw.push_back({static_cast<int>(at), s, dst, acc, stable});
        }
    }

    // A pair resets (R_v) on every transition across which its node is not
    // stable, including transitions predating the first sighting of v.
    const int pairs = static_cast<int>(registry.ids.size());
    const std::uint64_t full =
        pairs >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << pairs) - 1;
    DetAutomaton det(automaton.alphabet(), static_cast<int>(trees.size()), 0,
                     Acceptance::rabin, pairs);
    for (const RawEdge& e : raw)
        det.add_edge(e.src, {e.symbol, e.dst, e.acc_bits, full & ~e.stable_bits, 0});
    return det;
}

DetAutomaton determinize_rabin(const Ngba& automaton) {
    return determinize_rabin(automaton, initial_history_tree(automaton));
}

}  // namespace pmc
