#pragma once

#include <map>

#include "toric/matrix.hpp"

namespace toric {

/// Orlik-Solomon algebra of a central arrangement over Z, with the no-broken-
/// circuit basis.  Elements are Z-combinations of sorted index words; words
/// keep their caller-side labels (the ground set need not be 0..n-1).
class OsAlgebra {
public:
    using Word = std::vector<int>;          // sorted, distinct labels
    using Element = std::map<Word, Int>;    // zero coefficients pruned

    /// labels[i] names column i of `vectors`.
    OsAlgebra(std::vector<int> labels, IntMatrix vectors);

    const std::vector<int>& labels() const { return labels_; }
    const std::vector<Word>& circuit_list() const { return circuits_; }

    bool independent(const Word& w) const;
    bool is_nbc(const Word& w) const;
    std::vector<Word> nbc_sets(int k) const;

    /// NBC coordinates of a single basis word (empty element when dependent).
    /// Rewrites broken circuits by the circuit relations; all moves are +-1.
    const Element& straighten_word(const Word& w);

    Element product(const Element& x, const Element& y);
    static Element scale(const Element& x, const Int& c);
    static Element add(const Element& x, const Element& y);

private:
    int column_of(int label) const;

    std::vector<int> labels_;
    IntMatrix vectors_;
    std::vector<Word> circuits_;          // sorted labels, size-then-lex order
    std::map<Word, Element> memo_;
};

/// Sign of merging two sorted disjoint words into one sorted word.
int merge_sign(const OsAlgebra::Word& a, const OsAlgebra::Word& b);

} // namespace toric
