#include "hf/algebra.hpp"

namespace hf {

std::string Chord::str() const {
    if (is_idem_) return idem_ == Idem::I0 ? "i0" : "i1";
    std::string s;
    for (int i = 0; i < len_; ++i) s += char('0' + letter(i));
    return s;
}

Chord Chord::parse(const std::string& s) {
    if (s == "i0") return idem(Idem::I0);
    if (s == "i1") return idem(Idem::I1);
    if (s.empty()) throw Error(Error::InvalidInput, "empty chord string");
    int first = -1, prev = -1;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '3') throw Error(Error::InvalidInput, "bad chord letter in '" + s + "'");
        int d = s[i] - '0';
        if (i == 0)
            first = d;
        else if (d != ((prev + 1) & 3))
            throw Error(Error::InvalidInput, "non-consecutive chord letters in '" + s + "'");
        prev = d;
    }
    return make(first, (int)s.size());
}

std::optional<Chord> chord_mul_basis(const Chord& a, const Chord& b) {
    if (a.is_idem()) {
        if (b.is_idem()) return a.idem_value() == b.idem_value() ? std::optional<Chord>(a) : std::nullopt;
        return a.idem_value() == b.source() ? std::optional<Chord>(b) : std::nullopt;
    }
    if (b.is_idem()) return b.idem_value() == a.target() ? std::optional<Chord>(a) : std::nullopt;
    if (b.first() != ((a.last() + 1) & 3)) return std::nullopt;
    return Chord::try_make(a.first(), a.len() + b.len());  // nullopt iff two zeros
}

AlgElement chord_mul(const AlgElement& a, const AlgElement& b) {
    AlgElement out;
    for (auto& x : a.terms())
        for (auto& y : b.terms())
            if (auto c = chord_mul_basis(x, y)) out.add(*c);
    return out;
}

AlgElement central_U() {
    AlgElement u;
    for (int f = 0; f < 4; ++f) u.add(Chord::make(f, 4));
    return u;
}

std::vector<int> relabel_for_typeA(const std::vector<int>& letters) {
    std::vector<int> out;
    out.reserve(letters.size());
    for (int l : letters) {
        if (l == 0) throw Error(Error::InvalidInput, "relabel_for_typeA rejects chords containing 0");
        out.push_back(l == 1 ? 3 : l == 3 ? 1 : 2);
    }
    return out;
}

std::vector<Chord> regroup_increasing(const std::vector<int>& letters) {
    if (letters.empty()) throw Error(Error::InvalidInput, "regroup_increasing: empty input");
    std::vector<Chord> out;
    size_t i = 0;
    while (i < letters.size()) {
        size_t j = i + 1;
        while (j < letters.size() && letters[j] == letters[j - 1] + 1 && letters[j] <= 3) ++j;
        for (size_t t = i; t < j; ++t)
            if (letters[t] < 1 || letters[t] > 3)
                throw Error(Error::InvalidInput, "regroup_increasing: letters must be in {1,2,3}");
        out.push_back(Chord::make(letters[i], int(j - i)));
        i = j;
    }
    return out;
}

}  // namespace hf
