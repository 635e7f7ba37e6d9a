#pragma once

// The torus algebra A and its extension At: idempotents i0, i1 and Reeb
// chords rho_I for sequences I over Z/4 that increase by 1 mod 4 and contain
// at most one 0. A chord is stored as (first letter, length); this makes
// malformed words unrepresentable.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hf {

enum class Idem : uint8_t { I0 = 0, I1 = 1 };

inline Idem other(Idem i) { return i == Idem::I0 ? Idem::I1 : Idem::I0; }

struct Error : std::runtime_error {
    enum Code {
        InvalidInput,
        IdempotentMismatch,
        DSquaredNonzero,
        NotExtendable,
        UnbreakableCycle,
        NonInvertibleSystem,
        ZeroHomologyClass,
        NullhomotopicComponent,
        InconsistentClasses,
        UnboundedSecondFactor,
        OracleDisagreement,
    };
    Error(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
    Code code;
};

// rho_1, rho_3 : i0 -> i1 ; rho_2, rho_0 : i1 -> i0.
class Chord {
  public:
    // idempotent chord
    static Chord idem(Idem i) {
        Chord c;
        c.is_idem_ = true;
        c.idem_ = i;
        return c;
    }
    // chord with letters first, first+1, ..., first+len-1 (mod 4)
    static Chord make(int first, int len) {
        if (len < 1 || first < 0 || first > 3) throw Error(Error::InvalidInput, "bad chord");
        Chord c;
        c.first_ = first;
        c.len_ = len;
        if (c.zeros() > 1) throw Error(Error::InvalidInput, "chord has more than one 0");
        return c;
    }
    static std::optional<Chord> try_make(int first, int len) {
        if (len < 1 || first < 0 || first > 3) return std::nullopt;
        Chord c;
        c.first_ = first;
        c.len_ = len;
        if (c.zeros() > 1) return std::nullopt;
        return c;
    }
    static Chord parse(const std::string& s);

    bool is_idem() const { return is_idem_; }
    Idem idem_value() const { return idem_; }
    int first() const { return first_; }
    int len() const { return is_idem_ ? 0 : len_; }
    int last() const { return (first_ + len_ - 1) & 3; }
    int letter(int i) const { return (first_ + i) & 3; }

    int zeros() const {
        if (is_idem_) return 0;
        int z = 0;
        for (int i = 0; i < len_; ++i)
            if (letter(i) == 0) ++z;
        return z;
    }
    bool in_small_algebra() const { return is_idem_ || zeros() == 0; }

    Idem source() const {
        if (is_idem_) return idem_;
        return (first_ == 1 || first_ == 3) ? Idem::I0 : Idem::I1;
    }
    Idem target() const {
        if (is_idem_) return idem_;
        return (last() == 1 || last() == 3) ? Idem::I1 : Idem::I0;
    }

    std::string str() const;

    bool operator==(const Chord& o) const {
        return is_idem_ == o.is_idem_ && (is_idem_ ? idem_ == o.idem_ : (first_ == o.first_ && len_ == o.len_));
    }
    bool operator<(const Chord& o) const {
        if (is_idem_ != o.is_idem_) return is_idem_;
        if (is_idem_) return idem_ < o.idem_;
        if (first_ != o.first_) return first_ < o.first_;
        return len_ < o.len_;
    }

  private:
    bool is_idem_ = false;
    Idem idem_ = Idem::I0;
    int first_ = 0, len_ = 0;
};

// F2-linear combination of chords. All nonzero elements must be
// idempotent-homogeneous (shared source and target).
class AlgElement {
  public:
    AlgElement() = default;
    explicit AlgElement(const Chord& c) { terms_.insert(c); }

    static AlgElement zero() { return AlgElement(); }

    bool is_zero() const { return terms_.empty(); }
    const std::set<Chord>& terms() const { return terms_; }

    void add(const Chord& c) {  // F2 addition
        auto it = terms_.find(c);
        if (it != terms_.end())
            terms_.erase(it);
        else {
            terms_.insert(c);
            check_homogeneous();
        }
    }
    AlgElement operator+(const AlgElement& o) const {
        AlgElement r = *this;
        for (auto& c : o.terms_) r.add(c);
        return r;
    }
    bool operator==(const AlgElement& o) const { return terms_ == o.terms_; }

  private:
    void check_homogeneous() const {
        if (terms_.size() < 2) return;
        auto it = terms_.begin();
        Idem s = it->source(), t = it->target();
        for (++it; it != terms_.end(); ++it)
            if (it->source() != s || it->target() != t)
                throw Error(Error::IdempotentMismatch, "mixed idempotents in algebra element");
    }
    std::set<Chord> terms_;
};

// Product of single chords in the extended algebra; nullopt on zero.
std::optional<Chord> chord_mul_basis(const Chord& a, const Chord& b);

AlgElement chord_mul(const AlgElement& a, const AlgElement& b);

// U = rho_1230 + rho_2301 + rho_3012 + rho_0123, central in At.
AlgElement central_U();

// Type A relabelling 1<->3 (letterwise); rejects chords containing 0.
std::vector<int> relabel_for_typeA(const std::vector<int>& letters);

// Split a {1,2,3}-sequence into the minimal number of chords from
// {1,2,3,12,23,123}; breakpoints are forced exactly where the next letter is
// not the successor.
std::vector<Chord> regroup_increasing(const std::vector<int>& letters);

// c0 + c1*U in F2[U]/U^2.
struct UCoeff {
    bool c0 = false, c1 = false;
    UCoeff operator*(const UCoeff& o) const { return {c0 && o.c0, (c0 && o.c1) ^ (c1 && o.c0)}; }
    UCoeff operator+(const UCoeff& o) const { return {c0 ^ o.c0, c1 ^ o.c1}; }
    bool operator==(const UCoeff& o) const { return c0 == o.c0 && c1 == o.c1; }
};

}  // namespace hf
