#include "corpus.hpp"
#include "hkh/builders.hpp"
#include "hkh/diagram.hpp"
#include "hkh/error.hpp"
#include "hkh/homology.hpp"
#include "hkh/moves.hpp"
#include "oracles/classical_kh.hpp"
#include "oracles/source_sink_search.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace hkh;

namespace {

bool has_kind(const std::vector<Violation>& v, const std::string& kind)
{
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

Diagram kink(int sign)
{
    MoveSpec m;
    m.kind = MoveKind::r1_add;
    m.free_loop = 0;
    m.sign = sign;
    return apply_move(free_loop_diagram(0, Word{}), m);
}

ErrorKind error_of(const Diagram& d, const MoveSpec& m)
{
    try {
        apply_move(d, m);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("move unexpectedly applied: " << to_string(m));
    return ErrorKind::parse_error;
}

// Index of an edge whose two ends sit at the same crossing.
int loop_edge(const Diagram& d)
{
    const Topology t(d);
    for (int e = 0; e < t.edge_count(); ++e)
        if (t.tail(e).crossing == t.head(e).crossing)
            return e;
    return -1;
}

}  // namespace

TEST_SUITE("diagram")
{
    TEST_CASE("validation")
    {
        CHECK(validate(free_loop_diagram(1, parse_word("a", 1))).empty());
        for (const auto& [name, d] : test_corpus::all()) {
            INFO(name);
            CHECK(validate(d).empty());
        }

        Diagram d = test_corpus::load("hopf");
        d.crossings[0].slots[0] = 99;
        CHECK(has_kind(validate(d), "dangling-edge"));

        d = test_corpus::load("trefoil_right");
        d.crossings[0].slots[0] = d.crossings[0].slots[2];
        CHECK(has_kind(validate(d), "degree"));

        d = test_corpus::load("hopf");
        d.edges.push_back(d.edges.front());
        CHECK(has_kind(validate(d), "duplicate-id"));

        d = test_corpus::load("hopf");
        d.crossings[0].sign = 2;
        CHECK(has_kind(validate(d), "bad-sign"));

        d = test_corpus::load("trefoil_right");
        d.crossings[0].sign = -d.crossings[0].sign;
        CHECK(has_kind(validate(d), "orientation"));

        d = test_corpus::load("torus_clasp");
        d.genus = 0;
        CHECK(has_kind(validate(d), "malformed-word"));

        CHECK_THROWS_AS(oriented(d), Error);
        CHECK_THROWS_AS(Topology{d}, Error);
    }

    TEST_CASE("kink signs and mirror")
    {
        const CrossingSigns pos = crossing_signs(kink(1));
        CHECK(pos.n_plus == 1);
        CHECK(pos.n_minus == 0);
        const CrossingSigns neg = crossing_signs(mirror(kink(1)));
        CHECK(neg.n_plus == 0);
        CHECK(neg.n_minus == 1);
        CHECK(isomorphic(mirror(kink(1)), kink(-1)));
        const CrossingSigns none = crossing_signs(free_loop_diagram(1, parse_word("a", 1)));
        CHECK(none.n_plus == 0);
        CHECK(none.n_minus == 0);

        CHECK(crossing_signs(test_corpus::load("trefoil_right")).n_plus == 3);
        CHECK(crossing_signs(test_corpus::load("trefoil_left")).n_minus == 3);
        const CrossingSigns f8 = crossing_signs(test_corpus::load("figure_eight"));
        CHECK(f8.n_plus == 2);
        CHECK(f8.n_minus == 2);
    }

    TEST_CASE("signs agree with an independent strand walk")
    {
        auto check = [](const Diagram& d) {
            std::vector<int> expected;
            try {
                expected = oracle::oracle_signs(d);
            } catch (const std::runtime_error&) {
                return false;  // a component never passes under; the walk cannot see it
            }
            REQUIRE(crossing_signs(d).signs == expected);
            return true;
        };
        int checked = 0;
        for (const auto& [name, d] : test_corpus::all())
            checked += check(d);
        std::mt19937_64 rng(21);
        for (int k = 0; k < 300; ++k) {
            RandomDiagramSpec spec;
            spec.genus = k % 3;
            spec.max_crossings = 7;
            checked += check(random_diagram(rng, spec));
        }
        CHECK(checked > 100);
    }

    TEST_CASE("mirror negates every sign and is an involution")
    {
        std::mt19937_64 rng(22);
        for (int k = 0; k < 200; ++k) {
            RandomDiagramSpec spec;
            spec.genus = k % 3;
            const Diagram d = random_diagram(rng, spec);
            const auto s = crossing_signs(d).signs;
            auto m = crossing_signs(mirror(d)).signs;
            for (int& x : m)
                x = -x;
            REQUIRE(m == s);
            REQUIRE(isomorphic(mirror(mirror(d)), oriented(d)));
        }
    }

    TEST_CASE("reversal is an involution and keeps signs")
    {
        std::mt19937_64 rng(23);
        for (int k = 0; k < 200; ++k) {
            RandomDiagramSpec spec;
            spec.genus = k % 3;
            const Diagram d = random_diagram(rng, spec);
            REQUIRE(isomorphic(reverse_orientation(reverse_orientation(d)), oriented(d)));
            REQUIRE(crossing_signs(reverse_orientation(d)).signs == crossing_signs(d).signs);
        }
        for (const auto& [name, d] : test_corpus::all()) {
            INFO(name);
            CHECK(isomorphic(reverse_orientation(reverse_orientation(d)), oriented(d)));
        }
    }

    TEST_CASE("isomorphism ignores numbering but not words")
    {
        const Diagram d = test_corpus::load("torus_clasp");
        Diagram renamed = d;
        for (Edge& e : renamed.edges)
            e.id += 10;
        for (Crossing& c : renamed.crossings) {
            for (int& s : c.slots)
                s += 10;
            c.id = 5 - c.id;
        }
        std::reverse(renamed.crossings.begin(), renamed.crossings.end());
        CHECK(isomorphic(oriented(d), oriented(renamed)));
        Diagram changed = d;
        changed.edges[0].word = parse_word("B", 1);
        CHECK_FALSE(isomorphic(oriented(d), oriented(changed)));
    }

    TEST_CASE("source-sink structures agree with exhaustive search")
    {
        CHECK(has_source_sink(free_loop_diagram(1, parse_word("a", 1))));
        auto check = [](const Diagram& d) {
            const auto s = source_sink_structure(d);
            REQUIRE(s.has_value() == oracle::source_sink_exists(d));
            if (s) {
                REQUIRE(oracle::is_source_sink(d, *s));
                REQUIRE(oracle::is_source_sink(d, flipped(*s)));
            }
            return s.has_value();
        };
        int with = 0, without = 0;
        for (const auto& [name, d] : test_corpus::all())
            if (Topology(oriented(d)).edge_count() <= 16)
                (check(d) ? with : without)++;
        std::mt19937_64 rng(24);
        for (int k = 0; k < 400; ++k) {
            RandomDiagramSpec spec;
            spec.genus = k % 3;
            spec.max_crossings = 4;  // at most 8 edges
            (check(random_diagram(rng, spec)) ? with : without)++;
        }
        CHECK(with > 20);
        CHECK(without > 20);
        // Classical diagrams always admit one.
        for (const char* name : {"trefoil_left", "trefoil_right", "figure_eight", "hopf", "unknot_kink_positive"})
            CHECK(has_source_sink(test_corpus::load(name)));
        CHECK_FALSE(has_source_sink(test_corpus::load("torus_neutral")));
    }

    TEST_CASE("component counts")
    {
        CHECK(component_count(test_corpus::load("hopf")) == 2);
        CHECK(component_count(test_corpus::load("trefoil_right")) == 1);
        CHECK(component_count(test_corpus::load("torus_two_loops")) == 2);
        CHECK(component_count(test_corpus::load("unknot")) == 1);
        CHECK(component_count(braid_closure(3, {1, 1})) == 3);  // the third strand closes up alone
        CHECK(component_count(braid_closure(2, {1, 1})) == 2);
    }
}

TEST_SUITE("moves")
{
    TEST_CASE("move lists round-trip through text")
    {
        const std::string text = "r1+:edge=3;sign=-;style=over;split=1,r2+:edges=1,4;side=right;parallel=0;split=0;"
                                 "split_under=2,r2-:crossings=0,1,r3:crossings=2,5,7,r1-:crossing=4,r1+:loop=0;sign=+";
        const auto moves = parse_moves(text);
        REQUIRE(moves.size() == 6);
        CHECK(moves[0].kind == MoveKind::r1_add);
        CHECK(moves[0].edge == 3);
        CHECK(moves[0].sign == -1);
        CHECK_FALSE(moves[0].under_first);
        CHECK(moves[1].edges == std::vector<int>{1, 4});
        CHECK_FALSE(moves[1].left);
        CHECK_FALSE(moves[1].parallel);
        CHECK(moves[1].split_under == 2);
        CHECK(moves[3].crossings == std::vector<int>{2, 5, 7});
        CHECK(moves[4].kind == MoveKind::r1_remove);
        CHECK(moves[5].free_loop == 0);
        for (const MoveSpec& m : moves) {
            const auto again = parse_moves(to_string(m));
            REQUIRE(again.size() == 1);
            CHECK(to_string(again[0]) == to_string(m));
        }
        CHECK(parse_moves("r2:edges=1,4")[0].kind == MoveKind::r2_add);
        CHECK_THROWS_AS(parse_moves("r4:edge=1"), Error);
        CHECK_THROWS_AS(parse_moves("r1+:colour=red"), Error);
        CHECK_THROWS_AS(parse_moves("r1+:edge=x"), Error);
    }

    TEST_CASE("R1 on a free loop and back")
    {
        const Diagram loop = free_loop_diagram(1, parse_word("a", 1));
        for (int sign : {1, -1})
            for (bool under : {true, false}) {
                MoveSpec m;
                m.kind = MoveKind::r1_add;
                m.free_loop = 0;
                m.sign = sign;
                m.under_first = under;
                const Diagram k = apply_move(loop, m);
                REQUIRE(k.crossings.size() == 1);
                CHECK(crossing_signs(k).signs == std::vector<int>{sign});
                CHECK(compare(kh_h(loop), kh_h(k)) == std::nullopt);
                MoveSpec back;
                back.kind = MoveKind::r1_remove;
                back.crossings = {k.crossings[0].id};
                CHECK(isomorphic(apply_move(k, back), oriented(loop)));
            }
    }

    TEST_CASE("additions are undone by the matching removal")
    {
        const Diagram base = braid_closure(3, {1, -2, 1}, 1, {parse_word("a", 1), parse_word("b", 1)});
        int r1 = 0, r2 = 0;
        for (const MoveSpec& m : enumerate_sites(base)) {
            if (m.kind != MoveKind::r1_add && m.kind != MoveKind::r2_add)
                continue;
            const Diagram d = apply_move(base, m);
            MoveSpec back;
            if (m.kind == MoveKind::r1_add) {
                back.kind = MoveKind::r1_remove;
                back.crossings = {d.crossings.back().id};
                ++r1;
            } else {
                back.kind = MoveKind::r2_remove;
                back.crossings = {d.crossings[d.crossings.size() - 2].id, d.crossings.back().id};
                ++r2;
            }
            INFO(to_string(m));
            REQUIRE(isomorphic(apply_move(d, back), oriented(base)));
        }
        CHECK(r1 > 0);
        CHECK(r2 > 0);
    }

    TEST_CASE("removal errors")
    {
        const Diagram trefoil = test_corpus::load("trefoil_right");
        MoveSpec m;
        m.kind = MoveKind::r1_remove;
        m.crossings = {0};
        CHECK(error_of(trefoil, m) == ErrorKind::pattern_mismatch);
        m.crossings = {42};
        CHECK(error_of(trefoil, m) == ErrorKind::pattern_mismatch);

        m.kind = MoveKind::r2_remove;
        m.crossings = {0, 1};
        CHECK(error_of(trefoil, m) == ErrorKind::pattern_mismatch);
        m.kind = MoveKind::r3;
        m.crossings = {0, 1, 2};
        CHECK(error_of(trefoil, m) == ErrorKind::pattern_mismatch);

        // A kink whose loops wrap around the surface cannot be undone locally.
        // (On a lone kinked loop both edges are loops, so decorate both.)
        Diagram k = oriented(kink(1));
        k.genus = 1;
        REQUIRE(loop_edge(k) >= 0);
        for (Edge& x : k.edges)
            x.word = parse_word("a", 1);
        m.kind = MoveKind::r1_remove;
        m.crossings = {k.crossings[0].id};
        CHECK(error_of(k, m) == ErrorKind::nonlocal_words);
        k.edges[0].word = Word{};
        CHECK(apply_move(k, m).free_loops.size() == 1);

        // Likewise a decorated bigon.
        Diagram clasp = oriented(braid_closure(2, {1, -1}, 1));
        MoveSpec rem;
        rem.kind = MoveKind::r2_remove;
        rem.crossings = {clasp.crossings[0].id, clasp.crossings[1].id};
        CHECK(apply_move(clasp, rem).free_loops.size() == 2);
        for (Edge& x : clasp.edges)
            x.word = parse_word("b", 1);
        CHECK(error_of(clasp, rem) == ErrorKind::nonlocal_words);
    }

    TEST_CASE("R3 realizes the braid relation")
    {
        for (int s : {1, -1}) {
            const Diagram a = braid_closure(3, {s, 2 * s, s, -2, -2});
            const Diagram b = braid_closure(3, {2 * s, s, 2 * s, -2, -2});
            int sites = 0, braid_sites = 0;
            for (const MoveSpec& m : enumerate_local_sites(a)) {
                if (m.kind != MoveKind::r3)
                    continue;
                ++sites;
                const Diagram c = apply_move(a, m);
                CHECK(compare(kh_h(a), kh_h(c)) == std::nullopt);
                // The triangle of the first three crossings is the braid
                // relation; the closure makes other triangles too.
                if (m.crossings == std::vector<int>{0, 1, 2}) {
                    ++braid_sites;
                    CHECK(isomorphic(c, oriented(b)));
                    bool back = false;
                    for (const MoveSpec& n : enumerate_local_sites(c))
                        if (n.kind == MoveKind::r3 && isomorphic(apply_move(c, n), oriented(a)))
                            back = true;
                    CHECK(back);
                }
            }
            CHECK(sites >= 1);
            CHECK(braid_sites == 1);
        }
    }

    TEST_CASE("words off the move site are untouched")
    {
        const Diagram d = test_corpus::load("torus_clasp");
        for (const MoveSpec& m : enumerate_sites(d)) {
            const Diagram e = apply_move(d, m);
            // Total word content is preserved letter for letter (kinks and
            // bigons only split words).
            auto letters = [](const Diagram& x) {
                std::vector<int> count(8, 0);
                for (const Edge& ed : x.edges)
                    for (const Letter& l : ed.word.letters)
                        ++count[static_cast<std::size_t>(l.code())];
                for (const Word& w : x.free_loops)
                    for (const Letter& l : w.letters)
                        ++count[static_cast<std::size_t>(l.code())];
                return count;
            };
            INFO(to_string(m));
            REQUIRE(letters(e) == letters(d));
        }
    }
}
