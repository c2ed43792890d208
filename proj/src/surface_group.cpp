#include "hkh/surface_group.hpp"

#include "hkh/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

namespace hkh {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::malformed_word: return "malformed-word";
    case ErrorKind::unsupported_backend: return "unsupported-backend";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::pattern_mismatch: return "pattern-mismatch";
    case ErrorKind::nonlocal_words: return "nonlocal-words";
    case ErrorKind::corrupted_resolution: return "corrupted-resolution";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::parse_error: return "parse-error";
    }
    return "error";
}

Word Word::inverse() const
{
    Word out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        out.letters.push_back(it->inverse());
    return out;
}

Word operator*(const Word& lhs, const Word& rhs)
{
    Word out = lhs;
    out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return out;
}

Word parse_word(std::string_view text, int genus)
{
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (lower != 'a' && lower != 'b')
            throw Error(ErrorKind::malformed_word,
                        "unexpected character '" + std::string(1, ch) + "' in word \"" + std::string(text) + "\"");
        const bool inverted = std::isupper(static_cast<unsigned char>(ch)) != 0;
        ++i;
        int handle = 0;
        bool has_digits = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            handle = handle * 10 + (text[i] - '0');
            has_digits = true;
            ++i;
            if (handle > 10000)
                throw Error(ErrorKind::malformed_word, "handle index too large in \"" + std::string(text) + "\"");
        }
        if (!has_digits) {
            if (genus != 1)
                throw Error(ErrorKind::malformed_word,
                            "handle index may only be omitted on the torus: \"" + std::string(text) + "\"");
            handle = 1;
        }
        if (handle < 1 || handle > genus)
            throw Error(ErrorKind::malformed_word, "handle index " + std::to_string(handle) + " outside 1.." +
                                                       std::to_string(genus) + " in \"" + std::string(text) + "\"");
        w.letters.push_back(Letter::make(handle, lower == 'b', inverted));
    }
    return w;
}

std::string to_string(const Word& w, int genus)
{
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ' ';
        const Letter l = w[i];
        char c = l.is_b() ? 'b' : 'a';
        if (l.inverted())
            c = static_cast<char>(std::toupper(c));
        out += c;
        if (genus != 1)
            out += std::to_string(l.handle());
    }
    return out;
}

Word free_reduce(const Word& w)
{
    Word out;
    out.letters.reserve(w.size());
    for (Letter l : w.letters) {
        if (!out.letters.empty() && out.letters.back() == l.inverse())
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

Word cyclic_reduce(const Word& w)
{
    Word r = free_reduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    return Word(std::vector<Letter>(r.letters.begin() + static_cast<std::ptrdiff_t>(lo),
                                    r.letters.begin() + static_cast<std::ptrdiff_t>(hi)));
}

Word surface_relator(int genus)
{
    Word r;
    for (int h = 1; h <= genus; ++h) {
        r.letters.push_back(Letter::make(h, false, false));
        r.letters.push_back(Letter::make(h, true, false));
        r.letters.push_back(Letter::make(h, false, true));
        r.letters.push_back(Letter::make(h, true, true));
    }
    return r;
}

std::vector<int> abelianize(const Word& w, int genus)
{
    std::vector<int> v(static_cast<std::size_t>(2 * genus), 0);
    for (Letter l : w.letters) {
        const std::size_t idx = static_cast<std::size_t>(2 * (l.handle() - 1) + (l.is_b() ? 1 : 0));
        if (idx < v.size())
            v[idx] += l.inverted() ? -1 : 1;
    }
    return v;
}

namespace {

// Every letter occurs exactly once in the surface relator and once in its
// inverse, so a subword match is pinned down by its first letter.
class RelatorTable {
public:
    explicit RelatorTable(int genus) : length_(4 * genus)
    {
        rel_[0] = surface_relator(genus);
        rel_[1] = rel_[0].inverse();
        for (int k = 0; k < 2; ++k) {
            pos_[k].assign(static_cast<std::size_t>(4 * genus), -1);
            for (int i = 0; i < length_; ++i)
                pos_[k][static_cast<std::size_t>(rel_[k][static_cast<std::size_t>(i)].code())] = i;
        }
    }

    int length() const { return length_; }

    struct Match {
        int which = 0;
        int start = 0;  // position in the relator
        int len = 0;
    };

    // Longest match of w[i..] (cyclic when `cyclic`) against a rotation of
    // relator `which`, capped at `cap` letters.
    Match match_at(const Word& w, std::size_t i, int which, bool cyclic, int cap) const
    {
        Match m{which, pos_[which][static_cast<std::size_t>(w[i].code())], 0};
        const std::size_t n = w.size();
        while (m.len < cap) {
            const std::size_t wi = i + static_cast<std::size_t>(m.len);
            if (!cyclic && wi >= n)
                break;
            const Letter wl = w[wi % n];
            const Letter rl = rel_[which][static_cast<std::size_t>((m.start + m.len) % length_)];
            if (wl != rl)
                break;
            ++m.len;
        }
        return m;
    }

    // Inverse of the part of the relator rotation not covered by the match.
    Word replacement(const Match& m) const
    {
        Word complement;
        for (int k = m.len; k < length_; ++k)
            complement.letters.push_back(rel_[m.which][static_cast<std::size_t>((m.start + k) % length_)]);
        return complement.inverse();
    }

private:
    int length_;
    Word rel_[2];
    std::vector<int> pos_[2];
};

Word splice(const Word& w, std::size_t at, std::size_t len, const Word& repl)
{
    Word out;
    out.letters.reserve(w.size() - len + repl.size());
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(at));
    out.letters.insert(out.letters.end(), repl.letters.begin(), repl.letters.end());
    out.letters.insert(out.letters.end(), w.letters.begin() + static_cast<std::ptrdiff_t>(at + len), w.letters.end());
    return out;
}

Word rotate(const Word& w, std::size_t k)
{
    Word out;
    out.letters.reserve(w.size());
    out.letters.insert(out.letters.end(), w.letters.begin() + static_cast<std::ptrdiff_t>(k), w.letters.end());
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

Word least_rotation(const Word& w)
{
    Word best = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        Word r = rotate(w, k);
        if (r < best)
            best = std::move(r);
    }
    return best;
}

Word cyclic_dehn_impl(const Word& input, const RelatorTable& table)
{
    Word w = cyclic_reduce(input);
    const int half = table.length() / 2;
    for (;;) {
        bool changed = false;
        const std::size_t n = w.size();
        const int cap = std::min(static_cast<int>(n), table.length());
        for (std::size_t i = 0; i < n && !changed; ++i) {
            for (int which = 0; which < 2 && !changed; ++which) {
                const auto m = table.match_at(w, i, which, true, cap);
                if (m.len > half) {
                    Word rotated = rotate(w, i);
                    w = cyclic_reduce(splice(rotated, 0, static_cast<std::size_t>(m.len), table.replacement(m)));
                    changed = true;
                }
            }
        }
        if (!changed)
            return w;
    }
}

Word hyperbolic_canonical(const Word& input, int genus)
{
    const RelatorTable table(genus);
    const int half = table.length() / 2;
    Word current = cyclic_dehn_impl(input, table);

    // Explore every cyclic word reachable by swapping an exact half of the
    // relator for the other half. A swap that enables a Dehn reduction
    // restarts the search from the shorter word.
restart:
    if (current.empty())
        return current;
    std::set<Word> seen{least_rotation(current)};
    std::deque<Word> queue{*seen.begin()};
    while (!queue.empty()) {
        const Word u = queue.front();
        queue.pop_front();
        const std::size_t n = u.size();
        if (static_cast<int>(n) < half)
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            for (int which = 0; which < 2; ++which) {
                const auto m = table.match_at(u, i, which, true, half);
                if (m.len != half)
                    continue;
                Word v = cyclic_dehn_impl(
                    splice(rotate(u, i), 0, static_cast<std::size_t>(half), table.replacement(m)), table);
                if (v.size() < n) {
                    current = std::move(v);
                    goto restart;
                }
                Word key = least_rotation(v);
                if (seen.insert(key).second)
                    queue.push_back(std::move(key));
            }
        }
    }

    Word best = *seen.begin();
    for (const Word& u : seen) {
        Word inv = least_rotation(u.inverse());
        if (inv < best)
            best = std::move(inv);
    }
    return best;
}

}  // namespace

Word dehn_reduce(const Word& input, int genus)
{
    if (genus < 2)
        throw Error(ErrorKind::unsupported_backend, "Dehn reduction needs genus >= 2, got " + std::to_string(genus));
    const RelatorTable table(genus);
    const int half = table.length() / 2;
    Word w = free_reduce(input);
    for (;;) {
        bool changed = false;
        for (std::size_t i = 0; i < w.size() && !changed; ++i) {
            for (int which = 0; which < 2 && !changed; ++which) {
                const auto m = table.match_at(w, i, which, false, table.length());
                if (m.len > half) {
                    w = free_reduce(splice(w, i, static_cast<std::size_t>(m.len), table.replacement(m)));
                    changed = true;
                }
            }
        }
        if (!changed)
            return w;
    }
}

Word cyclic_dehn_reduce(const Word& w, int genus)
{
    if (genus < 2)
        throw Error(ErrorKind::unsupported_backend, "Dehn reduction needs genus >= 2, got " + std::to_string(genus));
    return cyclic_dehn_impl(w, RelatorTable(genus));
}

std::string to_string(const ConjClass& c, int genus)
{
    if (c.trivial)
        return "trivial";
    return "[" + to_string(c.canonical_word, genus) + "]";
}

SurfaceBackend::SurfaceBackend(int genus) : genus_(genus)
{
    if (genus < 0)
        throw Error(ErrorKind::unsupported_backend, "negative genus " + std::to_string(genus));
    kind_ = genus == 0 ? SurfaceKind::sphere : genus == 1 ? SurfaceKind::torus : SurfaceKind::hyperbolic;
}

void SurfaceBackend::check_word(const Word& w) const
{
    for (Letter l : w.letters)
        if (l.handle() > genus_)
            throw Error(ErrorKind::malformed_word, "letter with handle " + std::to_string(l.handle()) +
                                                       " on a genus-" + std::to_string(genus_) + " surface");
}

bool SurfaceBackend::is_trivial(const Word& w) const
{
    check_word(w);
    switch (kind_) {
    case SurfaceKind::sphere: return true;
    case SurfaceKind::torus: {
        const auto v = abelianize(w, 1);
        return v[0] == 0 && v[1] == 0;
    }
    case SurfaceKind::hyperbolic: return cyclic_reduce(dehn_reduce(w, genus_)).empty();
    }
    return true;
}

ConjClass SurfaceBackend::canonical_class(const Word& w) const
{
    check_word(w);
    switch (kind_) {
    case SurfaceKind::sphere: return {};
    case SurfaceKind::torus: {
        auto v = abelianize(w, 1);
        if (v[0] == 0 && v[1] == 0)
            return {};
        if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) {
            v[0] = -v[0];
            v[1] = -v[1];
        }
        Word c;
        for (int k = 0; k < std::abs(v[0]); ++k)
            c.letters.push_back(Letter::make(1, false, v[0] < 0));
        for (int k = 0; k < std::abs(v[1]); ++k)
            c.letters.push_back(Letter::make(1, true, v[1] < 0));
        return {std::move(c), false};
    }
    case SurfaceKind::hyperbolic: {
        Word c = hyperbolic_canonical(w, genus_);
        if (c.empty())
            return {};
        return {std::move(c), false};
    }
    }
    return {};
}

long GradingElem::coefficient(const ConjClass& c) const
{
    auto it = terms_.find(c);
    return it == terms_.end() ? 0 : it->second;
}

GradingElem& GradingElem::add_term(const ConjClass& c, long k)
{
    if (c.trivial || k == 0)
        return *this;
    auto [it, inserted] = terms_.emplace(c, k);
    if (!inserted) {
        it->second += k;
        if (it->second == 0)
            terms_.erase(it);
    }
    return *this;
}

GradingElem& GradingElem::operator+=(const GradingElem& other)
{
    for (const auto& [c, k] : other.terms_)
        add_term(c, k);
    return *this;
}

GradingElem operator-(const GradingElem& x)
{
    GradingElem out;
    for (const auto& [c, k] : x.terms_)
        out.terms_.emplace(c, -k);
    return out;
}

GradingElem grading_term(const ConjClass& c, long k)
{
    GradingElem g;
    g.add_term(c, k);
    return g;
}

std::string to_string(const GradingElem& h, int genus)
{
    if (h.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [c, k] : h.terms()) {
        if (first)
            out << k;
        else
            out << (k < 0 ? " - " : " + ") << std::abs(k);
        out << '*' << to_string(c, genus);
        first = false;
    }
    return out.str();
}

}  // namespace hkh
