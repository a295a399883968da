#include "egoref/keys.hpp"

#include <openssl/evp.h>

#include <algorithm>

#include "egoref/error.hpp"

namespace egoref {

KeyTable& KeyTable::instance() {
    static KeyTable table;
    return table;
}

std::size_t KeyTable::NodeHash::operator()(const KeyNode& n) const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::size_t>(n.tag);
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    for (const auto& s : n.strs) mix(std::hash<std::string>{}(s));
    for (auto v : n.ints) mix(std::hash<std::uint64_t>{}(v));
    for (auto k : n.kids) mix(std::hash<std::uint32_t>{}(k));
    return h;
}

KeyId KeyTable::intern(KeyNode node) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ids_.find(node);
    if (it != ids_.end()) return it->second;
    KeyId id = static_cast<KeyId>(nodes_.size());
    nodes_.push_back(node);
    ids_.emplace(std::move(node), id);
    return id;
}

KeyNode KeyTable::node(KeyId id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return nodes_.at(id);
}

int KeyTable::compare(KeyId a, KeyId b) const {
    std::lock_guard<std::mutex> lock(mu_);
    return compare_locked(a, b);
}

int KeyTable::compare_locked(KeyId a, KeyId b) const {
    if (a == b) return 0;
    std::uint64_t pair = (static_cast<std::uint64_t>(a) << 32) | b;
    auto it = cmp_cache_.find(pair);
    if (it != cmp_cache_.end()) return it->second;

    const KeyNode& na = nodes_.at(a);
    const KeyNode& nb = nodes_.at(b);
    int result = 0;
    if (na.tag != nb.tag) {
        result = na.tag < nb.tag ? -1 : 1;
    } else if (na.strs != nb.strs) {
        result = na.strs < nb.strs ? -1 : 1;
    } else if (na.ints != nb.ints) {
        result = na.ints < nb.ints ? -1 : 1;
    } else {
        for (std::size_t i = 0; result == 0 && i < std::min(na.kids.size(), nb.kids.size()); ++i)
            result = compare_locked(na.kids[i], nb.kids[i]);
        if (result == 0 && na.kids.size() != nb.kids.size())
            result = na.kids.size() < nb.kids.size() ? -1 : 1;
    }
    cmp_cache_.emplace(pair, result);
    cmp_cache_.emplace((static_cast<std::uint64_t>(b) << 32) | a, -result);
    return result;
}

namespace {

std::array<std::uint8_t, 32> sha256(const std::string& data) {
    std::array<std::uint8_t, 32> out{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, out.data(), &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256 failure");
    }
    EVP_MD_CTX_free(ctx);
    return out;
}

}  // namespace

std::array<std::uint8_t, 32> KeyTable::digest(KeyId id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return digest_locked(id);
}

std::array<std::uint8_t, 32> KeyTable::digest_locked(KeyId id) const {
    auto it = digest_cache_.find(id);
    if (it != digest_cache_.end()) return it->second;
    const KeyNode& n = nodes_.at(id);
    std::string buf = "egoref.key.v1";
    buf += static_cast<char>(n.tag);
    for (const auto& s : n.strs) {
        buf += 'S';
        buf += std::to_string(s.size());
        buf += ':';
        buf += s;
    }
    for (auto v : n.ints) {
        buf += 'I';
        buf += std::to_string(v);
    }
    for (auto kid : n.kids) {
        auto d = digest_locked(kid);
        buf += 'K';
        buf.append(reinterpret_cast<const char*>(d.data()), d.size());
    }
    auto d = sha256(buf);
    digest_cache_.emplace(id, d);
    return d;
}

std::string KeyTable::digest_hex(KeyId id) const {
    auto d = digest(id);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (auto b : d) {
        out += hex[b >> 4];
        out += hex[b & 0xf];
    }
    return out;
}

void KeyTable::render_locked(KeyId id, std::string& out, std::size_t max_bytes) const {
    if (out.size() > max_bytes) throw GuardError("full key rendering exceeds size cap");
    const KeyNode& n = nodes_.at(id);
    switch (n.tag) {
        case KeyTag::ColorInit: out += "L("; break;
        case KeyTag::ColorRefine: out += "R("; break;
        case KeyTag::ColorIndiv: out += "I("; break;
        case KeyTag::ColorHe: out += "H("; break;
        case KeyTag::Hist: out += "M("; break;
        case KeyTag::Tree: out += "T("; break;
    }
    bool first = true;
    for (const auto& s : n.strs) {
        if (!first) out += ',';
        first = false;
        out += s;
    }
    for (auto v : n.ints) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(v);
    }
    for (auto kid : n.kids) {
        if (!first) out += ',';
        first = false;
        render_locked(kid, out, max_bytes);
    }
    out += ')';
}

std::string KeyTable::render(KeyId id, std::size_t max_bytes) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::string out;
    render_locked(id, out, max_bytes);
    return out;
}

void sort_keys(std::vector<KeyId>& ids) {
    auto& table = KeyTable::instance();
    std::sort(ids.begin(), ids.end(), [&table](KeyId a, KeyId b) { return table.less(a, b); });
}

std::string sha256_hex(const std::string& data) {
    auto d = sha256(data);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (auto b : d) {
        out += hex[b >> 4];
        out += hex[b & 0xf];
    }
    return out;
}

}  // namespace egoref
