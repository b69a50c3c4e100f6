#include "mori/permgroup.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace mori {

namespace {

using Perm = std::array<std::uint8_t, 7>;

struct Bitset {
    std::vector<std::uint64_t> words;

    explicit Bitset(std::size_t bits = 0) : words((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const {
        return (words[i >> 6] >> (i & 63)) & 1;
    }
    friend bool operator==(const Bitset& a, const Bitset& b) { return a.words == b.words; }
};

std::uint64_t hash_bits(const Bitset& b) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : b.words) {
        h ^= w;
        h *= 1099511628211ull;
    }
    return h;
}

class SymmetricGroup {
  public:
    explicit SymmetricGroup(unsigned n) : n_(n) {
        Perm p{};
        std::iota(p.begin(), p.begin() + n, 0);
        do {
            elems_.push_back(p);
        } while (std::next_permutation(p.begin(), p.begin() + n));
        order_ = elems_.size();

        key_to_id_.assign(pow_n(n), -1);
        for (std::size_t i = 0; i < order_; ++i) key_to_id_[key(elems_[i])] = static_cast<int>(i);

        mult_.assign(order_ * order_, 0);
        Perm tmp{};
        for (std::size_t a = 0; a < order_; ++a) {
            for (std::size_t b = 0; b < order_; ++b) {
                for (unsigned i = 0; i < n_; ++i) tmp[i] = elems_[a][elems_[b][i]];
                mult_[a * order_ + b] =
                    static_cast<std::uint16_t>(key_to_id_[key(tmp)]);
            }
        }
        inv_.resize(order_);
        parity_odd_.resize(order_);
        for (std::size_t a = 0; a < order_; ++a) {
            Perm ip{};
            for (unsigned i = 0; i < n_; ++i) ip[elems_[a][i]] = static_cast<std::uint8_t>(i);
            inv_[a] = static_cast<std::uint16_t>(key_to_id_[key(ip)]);
            parity_odd_[a] = parity(elems_[a]);
        }
    }

    unsigned n() const { return n_; }
    std::size_t order() const { return order_; }
    std::uint16_t mul(std::size_t a, std::size_t b) const { return mult_[a * order_ + b]; }
    std::uint16_t inv(std::size_t a) const { return inv_[a]; }
    bool odd(std::size_t a) const { return parity_odd_[a]; }
    std::uint16_t conj(std::size_t h, std::size_t t) const {
        return mul(mul(inv_[t], h), t);
    }

    std::vector<unsigned> cycle_type(std::size_t a) const {
        std::vector<unsigned> lens;
        std::array<bool, 7> seen{};
        for (unsigned i = 0; i < n_; ++i) {
            if (seen[i]) continue;
            unsigned len = 0, j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = elems_[a][j];
                ++len;
            }
            lens.push_back(len);
        }
        std::sort(lens.rbegin(), lens.rend());
        return lens;
    }

    // orbit of point 0 under the listed elements covers all points
    bool transitive(const std::vector<std::uint16_t>& elements) const {
        std::array<bool, 7> reach{};
        reach[0] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::uint16_t e : elements)
                for (unsigned i = 0; i < n_; ++i)
                    if (reach[i] && !reach[elems_[e][i]]) {
                        reach[elems_[e][i]] = true;
                        grew = true;
                    }
        }
        for (unsigned i = 0; i < n_; ++i)
            if (!reach[i]) return false;
        return true;
    }

  private:
    static bool parity(const Perm& p) {
        bool odd = false;
        std::array<bool, 7> seen{};
        for (unsigned i = 0; i < 7; ++i) {
            if (seen[i]) continue;
            unsigned len = 0, j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = p[j];
                ++len;
            }
            if (len % 2 == 0) odd = !odd;
        }
        return odd;
    }

    std::size_t key(const Perm& p) const {
        std::size_t k = 0;
        for (unsigned i = 0; i < n_; ++i) k = k * n_ + p[i];
        return k;
    }
    std::size_t pow_n(unsigned n) const {
        std::size_t r = 1;
        for (unsigned i = 0; i < n; ++i) r *= n;
        return r;
    }

    unsigned n_;
    std::size_t order_ = 0;
    std::vector<Perm> elems_;
    std::vector<int> key_to_id_;
    std::vector<std::uint16_t> mult_;
    std::vector<std::uint16_t> inv_;
    std::vector<bool> parity_odd_;
};

struct Subgroup {
    Bitset bits;
    std::vector<std::uint16_t> elements;  // ascending ids
    std::vector<std::uint16_t> gens;
};

class Registry {
  public:
    // returns true when the bitset was new
    bool insert(const Bitset& b) {
        std::uint64_t h = hash_bits(b);
        auto [it, _] = buckets_.try_emplace(h);
        for (std::size_t idx : it->second)
            if (stored_[idx] == b) return false;
        it->second.push_back(stored_.size());
        stored_.push_back(b);
        return true;
    }
    bool contains(const Bitset& b) const {
        auto it = buckets_.find(hash_bits(b));
        if (it == buckets_.end()) return false;
        for (std::size_t idx : it->second)
            if (stored_[idx] == b) return true;
        return false;
    }
    std::size_t size() const { return stored_.size(); }

  private:
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
    std::vector<Bitset> stored_;
};

}  // namespace

SubgroupOracleReport subgroup_oracle(unsigned n) {
    if (n > 7)
        throw std::invalid_argument("subgroup_oracle: n > 7 refused (combinatorial budget)");
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("subgroup_oracle: n must be odd and at least 3");

    SymmetricGroup G(n);
    const std::size_t N = G.order();
    const std::size_t half = N / 2;
    // Orders above which a subgroup is forced to be S_n, resp. A_n (largest
    // proper subgroup of A_n has order |A_n|/n for these n).
    const std::size_t an_threshold = half / n;

    // all-even generator closures land inside A_n; precompute A_n and S_n
    Subgroup full, alt;
    full.bits = Bitset(N);
    alt.bits = Bitset(N);
    for (std::size_t i = 0; i < N; ++i) {
        full.bits.set(i);
        full.elements.push_back(static_cast<std::uint16_t>(i));
        if (!G.odd(i)) {
            alt.bits.set(i);
            alt.elements.push_back(static_cast<std::uint16_t>(i));
        }
    }

    // Cyclic subgroups, deduplicated: every power e^k with gcd(k, ord) == 1
    // generates the same group, so mark all of them when the group is built.
    std::vector<Subgroup> cyclics;
    std::vector<int> elem_to_cyc(N, -1);
    for (std::size_t e = 0; e < N; ++e) {
        if (elem_to_cyc[e] >= 0) continue;
        std::vector<std::uint16_t> powers;  // e, e^2, ..., identity
        std::uint16_t cur = static_cast<std::uint16_t>(e);
        while (cur != 0) {
            powers.push_back(cur);
            cur = G.mul(cur, static_cast<std::uint16_t>(e));
        }
        powers.push_back(0);
        Subgroup c;
        c.bits = Bitset(N);
        for (std::uint16_t el : powers) c.bits.set(el);
        c.elements = powers;
        std::sort(c.elements.begin(), c.elements.end());
        c.gens.push_back(static_cast<std::uint16_t>(e));
        int id = static_cast<int>(cyclics.size());
        std::size_t ord = powers.size();
        for (std::size_t k = 1; k <= ord; ++k)
            if (std::gcd(k, ord) == 1) elem_to_cyc[powers[k - 1]] = id;
        cyclics.push_back(std::move(c));
    }

    auto closure = [&](const std::vector<std::uint16_t>& gens) -> Subgroup {
        bool all_even = true;
        for (std::uint16_t g : gens)
            if (G.odd(g)) all_even = false;
        Subgroup s;
        s.bits = Bitset(N);
        s.bits.set(0);
        s.elements.push_back(0);
        s.gens = gens;
        for (std::size_t idx = 0; idx < s.elements.size(); ++idx) {
            for (std::uint16_t g : gens) {
                std::uint16_t prod = G.mul(s.elements[idx], g);
                if (!s.bits.test(prod)) {
                    s.bits.set(prod);
                    s.elements.push_back(prod);
                    if (s.elements.size() > half) return full;  // must be S_n
                    if (all_even && s.elements.size() > an_threshold) {
                        Subgroup a = alt;
                        a.gens = gens;
                        return a;  // must be A_n
                    }
                }
            }
        }
        std::sort(s.elements.begin(), s.elements.end());
        return s;
    };

    auto normalizer = [&](const Subgroup& H) {
        std::vector<std::uint16_t> norm;
        for (std::size_t t = 0; t < N; ++t) {
            bool ok = true;
            for (std::uint16_t g : (H.gens.empty() ? H.elements : H.gens))
                if (!H.bits.test(G.conj(g, t))) {
                    ok = false;
                    break;
                }
            if (ok) norm.push_back(static_cast<std::uint16_t>(t));
        }
        return norm;
    };

    Registry registry;
    std::deque<Subgroup> queue;
    SubgroupOracleReport report;
    report.n = n;

    auto register_class = [&](const Subgroup& K) {
        if (registry.contains(K.bits)) return false;
        std::vector<std::uint16_t> normK = normalizer(K);
        // conjugates via coset representatives of the normalizer
        Bitset covered(N);
        std::size_t class_size = 0;
        for (std::size_t t = 0; t < N; ++t) {
            if (covered.test(t)) continue;
            Bitset cb(N);
            for (std::uint16_t e : K.elements) cb.set(G.conj(e, t));
            registry.insert(cb);
            ++class_size;
            for (std::uint16_t u : normK) covered.set(G.mul(u, t));
        }

        SubgroupClassInfo info;
        info.order = K.elements.size();
        info.class_size = class_size;
        info.transitive = G.transitive(K.elements);
        for (std::uint16_t e : K.elements) {
            auto ct = G.cycle_type(e);
            if (ct.size() == 2 && ct[0] == n - 1) info.has_n_minus_1_cycle = true;
            if (ct.size() == n - 1 && ct[0] == 2) info.has_transposition = true;
        }
        info.is_full_symmetric = info.order == N;
        report.classes.push_back(info);
        queue.push_back(K);
        return true;
    };

    Subgroup trivial;
    trivial.bits = Bitset(N);
    trivial.bits.set(0);
    trivial.elements.push_back(0);
    register_class(trivial);

    while (!queue.empty()) {
        Subgroup H = std::move(queue.front());
        queue.pop_front();
        std::vector<std::uint16_t> normH = normalizer(H);
        std::vector<bool> cyc_seen(cyclics.size(), false);
        for (std::size_t ci = 0; ci < cyclics.size(); ++ci) {
            if (cyc_seen[ci]) continue;
            const Subgroup& C = cyclics[ci];
            // skip cyclic subgroups already inside H
            bool inside = true;
            for (std::uint16_t e : C.elements)
                if (!H.bits.test(e)) {
                    inside = false;
                    break;
                }
            // mark the whole N(H)-orbit of C as handled
            std::uint16_t gen = C.gens[0];
            for (std::uint16_t t : normH) cyc_seen[elem_to_cyc[G.conj(gen, t)]] = true;
            if (inside) continue;

            std::vector<std::uint16_t> gens = H.gens;
            gens.push_back(gen);
            Subgroup K = closure(gens);
            K.gens = gens;
            register_class(K);
        }
    }

    report.subgroup_count = registry.size();
    report.class_count = report.classes.size();
    report.property_holds = true;
    for (const auto& c : report.classes) {
        if (c.transitive) ++report.transitive_class_count;
        if (c.transitive && c.has_n_minus_1_cycle && c.has_transposition &&
            !c.is_full_symmetric)
            report.property_holds = false;
    }
    return report;
}

}  // namespace mori
