#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hkh {

/// A generator a_i / b_i of the fundamental group of the closed oriented
/// genus-g surface, or its inverse.
///
/// The packed code orders letters as a1 < A1 < b1 < B1 < a2 < ... so that
/// comparing codes gives the lexicographic order used by normal forms.
class Letter {
public:
    constexpr Letter() = default;

    static constexpr Letter make(int handle, bool is_b, bool inverted)
    {
        return Letter(static_cast<std::uint16_t>((handle - 1) * 4 + (is_b ? 2 : 0) + (inverted ? 1 : 0)));
    }
    static constexpr Letter from_code(int code) { return Letter(static_cast<std::uint16_t>(code)); }

    constexpr int handle() const { return code_ / 4 + 1; }
    constexpr bool is_b() const { return (code_ & 2) != 0; }
    constexpr bool inverted() const { return (code_ & 1) != 0; }
    constexpr int code() const { return code_; }
    constexpr Letter inverse() const { return Letter(static_cast<std::uint16_t>(code_ ^ 1)); }

    constexpr auto operator<=>(const Letter&) const = default;

private:
    constexpr explicit Letter(std::uint16_t code) : code_(code) {}
    std::uint16_t code_ = 0;
};

struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> l) : letters(std::move(l)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    const Letter& operator[](std::size_t i) const { return letters[i]; }

    Word inverse() const;

    auto operator<=>(const Word&) const = default;
};

Word operator*(const Word& lhs, const Word& rhs);

/// Parses whitespace-separated letters such as "a1 B2 a1". Lowercase is a
/// generator, uppercase its inverse. On the torus the handle index may be
/// omitted ("a B"). Throws Error(malformed_word).
Word parse_word(std::string_view text, int genus);

/// Inverse of parse_word; the handle index is dropped when genus == 1.
std::string to_string(const Word& w, int genus);

Word free_reduce(const Word& w);

/// Free reduction followed by stripping inverse pairs at the two ends. The
/// result is conjugate to the input.
Word cyclic_reduce(const Word& w);

/// The standard relator a1 b1 A1 B1 ... ag bg Ag Bg.
Word surface_relator(int genus);

/// Dehn's algorithm for the genus-g surface group, g >= 2. Repeatedly
/// replaces a subword that is more than half of a cyclic rotation of the
/// relator (or its inverse) by the shorter complement. The result equals the
/// input in the group and is empty iff the input is trivial.
Word dehn_reduce(const Word& w, int genus);

/// Exponent sums (a1, b1, a2, b2, ...).
std::vector<int> abelianize(const Word& w, int genus);

/// Free homotopy class of an unoriented loop: the conjugacy class of
/// {w, w^-1}. The canonical word is empty iff the class is trivial.
struct ConjClass {
    Word canonical_word;
    bool trivial = true;

    auto operator<=>(const ConjClass&) const = default;
};

std::string to_string(const ConjClass& c, int genus);

enum class SurfaceKind { sphere, torus, hyperbolic };

/// Word problem and conjugacy normal forms for pi_1 of a closed oriented
/// surface, dispatched on genus.
class SurfaceBackend {
public:
    explicit SurfaceBackend(int genus);

    int genus() const { return genus_; }
    SurfaceKind kind() const { return kind_; }

    /// Throws Error(malformed_word) when a letter's handle exceeds the genus.
    void check_word(const Word& w) const;

    bool is_trivial(const Word& w) const;
    ConjClass canonical_class(const Word& w) const;

private:
    int genus_;
    SurfaceKind kind_;
};

/// Cyclically reduced word with no cyclic subword longer than half the
/// relator; conjugate to the input. Requires genus >= 2.
Word cyclic_dehn_reduce(const Word& w, int genus);

/// Element of the free abelian group on nontrivial free homotopy classes
/// (classes identified with their inverses, the trivial class is zero).
class GradingElem {
public:
    using Terms = std::map<ConjClass, long>;

    GradingElem() = default;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    long coefficient(const ConjClass& c) const;

    GradingElem& operator+=(const GradingElem& other);
    GradingElem& add_term(const ConjClass& c, long k);

    friend GradingElem operator+(GradingElem lhs, const GradingElem& rhs) { return lhs += rhs; }
    friend GradingElem operator-(const GradingElem& x);
    friend GradingElem operator-(const GradingElem& lhs, const GradingElem& rhs) { return lhs + (-rhs); }

    auto operator<=>(const GradingElem&) const = default;

private:
    Terms terms_;
};

GradingElem grading_term(const ConjClass& c, long k);
inline GradingElem grading_add(const GradingElem& x, const GradingElem& y) { return x + y; }
inline GradingElem grading_negate(const GradingElem& x) { return -x; }

/// Signed sum such as "2*[a] - 1*[b]"; "0" for the zero element.
std::string to_string(const GradingElem& h, int genus);

}  // namespace hkh
