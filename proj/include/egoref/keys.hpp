#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace egoref {

using KeyId = std::uint32_t;

// Canonical keys are hash-consed DAG nodes. A key records the full
// construction history of a color (or refinement tree), so equality of ids is
// exactly equality of histories: no collisions, and keys built from
// isomorphic runs are identical. Rendering the key as text is exponential in
// the iteration count, so keys stay structured in memory and are exported as
// fixed-width digests.
enum class KeyTag : std::uint8_t {
    ColorInit = 0,    // strs = sorted label names
    ColorRefine = 1,  // kids = [prev, neighbor colors... (sorted)]
    ColorIndiv = 2,   // kids = [prev], ints = [0|1]
    ColorHe = 3,      // strs = sorted label names, kids = [nested signature]
    Hist = 4,         // kids = colors (sorted), ints = counts (aligned)
    Tree = 5,         // kids = [hist, child tree keys... (sorted)]
};

struct KeyNode {
    KeyTag tag;
    std::vector<std::string> strs;
    std::vector<std::uint64_t> ints;
    std::vector<KeyId> kids;

    bool operator==(const KeyNode& o) const {
        return tag == o.tag && strs == o.strs && ints == o.ints && kids == o.kids;
    }
};

// Session-global intern table. Thread-safe; ids are only meaningful within a
// session and never appear in outputs (digests and rendered keys do).
class KeyTable {
  public:
    static KeyTable& instance();

    KeyId intern(KeyNode node);
    KeyNode node(KeyId id) const;

    // Canonical total order: lexicographic over the structured key
    // (tag, strs, ints, then children recursively). Graph-independent and
    // isomorphism-invariant. Returns <0, 0, >0.
    int compare(KeyId a, KeyId b) const;
    bool less(KeyId a, KeyId b) const { return compare(a, b) < 0; }

    // SHA-256 of the structural key, computed bottom-up and memoized.
    std::array<std::uint8_t, 32> digest(KeyId id) const;
    std::string digest_hex(KeyId id) const;

    // Full textual key. Throws when the rendering would exceed `max_bytes`.
    std::string render(KeyId id, std::size_t max_bytes = 1 << 20) const;

  private:
    KeyTable() = default;

    struct NodeHash {
        std::size_t operator()(const KeyNode& n) const;
    };

    mutable std::mutex mu_;
    std::vector<KeyNode> nodes_;
    std::unordered_map<KeyNode, KeyId, NodeHash> ids_;
    mutable std::unordered_map<std::uint64_t, int> cmp_cache_;
    mutable std::unordered_map<KeyId, std::array<std::uint8_t, 32>> digest_cache_;

    int compare_locked(KeyId a, KeyId b) const;
    std::array<std::uint8_t, 32> digest_locked(KeyId id) const;
    void render_locked(KeyId id, std::string& out, std::size_t max_bytes) const;
};

// Sorts ids in place by the canonical order.
void sort_keys(std::vector<KeyId>& ids);

// Hex SHA-256 of arbitrary bytes (input digests for reports).
std::string sha256_hex(const std::string& data);

}  // namespace egoref
