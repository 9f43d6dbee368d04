#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/errors.hpp"

namespace ringlab {

/// Element of a finite ring, addressed by index in 0..size-1.
/// Ring sizes are capped (default 65536), so indices fit in 16 bits.
using Elem = std::uint16_t;

class Ring;
using RingHandle = std::shared_ptr<const Ring>;

/// Resource caps shared by every potentially expensive operation.
struct Budget {
    std::uint64_t elements = 65536;        // largest constructible ring
    std::uint64_t tuples = 10'000'000;     // enumeration steps
    std::uint64_t tables = 1'000'000;      // stored tables in spans/closures
};

/**
 * A finite unital associative ring. Elements are plain indices; the handle
 * owns whatever structure (tables or formulas) realizes the operations.
 *
 * Handles are immutable after construction and safe to share across threads.
 * Two handles represent the same ring exactly when their canonical spec
 * strings match.
 */
class Ring {
public:
    virtual ~Ring() = default;

    const std::string& spec() const { return spec_; }
    std::size_t size() const { return size_; }
    Elem zero() const { return zero_; }
    Elem one() const { return one_; }
    std::uint64_t characteristic() const { return char_; }
    bool commutative() const { return commutative_; }
    /// "materialized-tables" or "structural".
    const std::string& storage() const { return storage_; }

    virtual Elem add(Elem a, Elem b) const = 0;
    virtual Elem mul(Elem a, Elem b) const = 0;
    virtual Elem neg(Elem a) const = 0;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    /// Row-major size*size tables; nullptr when the ring is structural.
    virtual const Elem* add_table() const { return nullptr; }
    virtual const Elem* mul_table() const { return nullptr; }

    bool same_ring(const Ring& other) const {
        return this == &other || spec_ == other.spec_;
    }

protected:
    std::string spec_;
    std::size_t size_ = 0;
    Elem zero_ = 0;
    Elem one_ = 0;
    std::uint64_t char_ = 0;
    bool commutative_ = false;
    std::string storage_ = "structural";
};

/**
 * Dual-number extension R[b1..bk]: free R-algebra on central generators with
 * all products bi*bj = 0. Elements are tuples (a0, a1, .., ak) over the base,
 * encoded in mixed radix with a0 least significant:
 *
 *     index = a0 + a1*|R| + a2*|R|^2 + ... + ak*|R|^k
 *
 * The base ring embeds as the indices 0..|R|-1. Operations follow the
 * componentwise rules; mul is (a0*b0, a0*bi + ai*b0). Storage is structural
 * by default; small duals can carry materialized tables on request.
 */
class DualRing : public Ring {
public:
    DualRing(RingHandle base, std::size_t k, const Budget& budget);

    const RingHandle& base() const { return base_; }
    std::size_t k() const { return k_; }

    Elem encode(Elem a0, const std::vector<Elem>& rest) const;
    std::vector<Elem> decode(Elem x) const;

    Elem add(Elem a, Elem b) const override;
    Elem mul(Elem a, Elem b) const override;
    Elem neg(Elem a) const override;
    const Elem* add_table() const override { return add_t_.empty() ? nullptr : add_t_.data(); }
    const Elem* mul_table() const override { return mul_t_.empty() ? nullptr : mul_t_.data(); }

    void materialize_tables();  // only before the handle is shared

private:
    RingHandle base_;
    std::size_t k_;
    std::vector<Elem> add_t_, mul_t_;
};

/// Downcast helper: non-null exactly when the handle is a dual ring.
inline const DualRing* as_dual(const Ring& r) { return dynamic_cast<const DualRing*>(&r); }

struct ConstructOptions {
    Budget budget;
    std::string cache_dir;   // empty disables the table cache
    /// -1: default policy (dual rings structural, others materialized when
    /// size <= 4096); 0: force structural; 1: force materialized (size <= 4096).
    int materialize = -1;
};

/// Parse a ring spec and build the ring. Grammar:
///   SPEC := "zn:"N | "gf:"Q | "gf:"P":"W[":"MOD] | "mat:"N":"SPEC
///         | "ut:"N":"SPEC | "prod:"SPEC"+"SPEC | "dual:"K":"SPEC
/// MOD is a comma-separated modulus coefficient list, lowest degree first.
RingHandle construct_ring(const std::string& spec, const ConstructOptions& opt = {});

/// Canonical form of a spec string (also validates it).
std::string canonical_spec(const std::string& spec);

/// Mixed-radix helpers on dual rings; throw WrongRing when `ring` is not dual
/// or the component count does not match k.
Elem dual_compose(const Ring& ring, Elem a0, const std::vector<Elem>& rest);
std::vector<Elem> dual_decompose(const Ring& ring, Elem x);

/// Materialized ring built from explicit tables (cache loads, quotients).
/// zero/one/neg/characteristic/commutativity are recovered by scanning.
RingHandle make_table_ring(const std::string& spec, std::size_t size,
                           std::vector<Elem> add, std::vector<Elem> mul);

/// Mixed-radix digit sizes of the ring's additive group: element index <->
/// digit tuple (least significant first) with addition digit-wise modular.
/// Follows the spec structure; nullopt when the spec is not in the grammar
/// (quotient rings, foreign table rings).
std::optional<std::vector<std::uint32_t>> additive_radices(const std::string& spec);

}  // namespace ringlab
