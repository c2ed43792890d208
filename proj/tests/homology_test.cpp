#include "corpus.hpp"
#include "hkh/builders.hpp"
#include "hkh/homology.hpp"
#include "oracles/classical_kh.hpp"

#include <doctest.h>
#include <json.hpp>

#include <map>
#include <random>

using namespace hkh;

namespace {

std::vector<oracle::KhEntry> flatten(const HomologyTable& t)
{
    std::vector<oracle::KhEntry> out;
    for (const auto& e : t.entries) {
        REQUIRE(e.h.is_zero());
        out.push_back({e.i, e.j, e.dim});
    }
    return out;
}

ConjClass cls(const char* w, int genus) { return SurfaceBackend(genus).canonical_class(parse_word(w, genus)); }

}  // namespace

TEST_SUITE("homology")
{
    TEST_CASE("the oracle reproduces the published trefoil table")
    {
        // Mod-2 Khovanov homology of the right-handed trefoil: the rational
        // part at (0,1), (0,3), (2,5), (3,9) plus the reduction of the
        // 2-torsion class, which shows up at (2,7) and (3,7).
        const std::vector<oracle::KhEntry> published{{0, 1, 1}, {0, 3, 1}, {2, 5, 1}, {2, 7, 1}, {3, 7, 1}, {3, 9, 1}};
        CHECK(oracle::classical_kh(test_corpus::load("trefoil_right")) == published);
        const std::vector<oracle::KhEntry> unknot{{0, -1, 1}, {0, 1, 1}};
        CHECK(oracle::classical_kh(test_corpus::load("unknot")) == unknot);
        // The corpus Hopf link has two negative crossings.
        const std::vector<oracle::KhEntry> hopf{{-2, -6, 1}, {-2, -4, 1}, {0, -2, 1}, {0, 0, 1}};
        CHECK(oracle::classical_kh(test_corpus::load("hopf")) == hopf);
    }

    TEST_CASE("classical homology matches the oracle")
    {
        for (const char* name : {"unknot", "unknot_kink_positive", "unknot_kink_negative", "trefoil_left",
                                 "trefoil_right", "figure_eight", "hopf"}) {
            INFO(name);
            const Diagram d = test_corpus::load(name);
            CHECK(flatten(kh_classical(d)) == oracle::classical_kh(d));
            CHECK(kh_h(d) == kh_classical(d));
        }
        std::mt19937_64 rng(51);
        std::uniform_int_distribution<int> strands(2, 4), len(1, 7), coin(0, 1);
        for (int k = 0; k < 60; ++k) {
            const int s = strands(rng);
            std::uniform_int_distribution<int> gen(1, s - 1);
            std::vector<int> word;
            for (int n = len(rng); n > 0; --n)
                word.push_back(coin(rng) ? gen(rng) : -gen(rng));
            const Diagram d = braid_closure(s, word);
            REQUIRE(flatten(kh_classical(d)) == oracle::classical_kh(d));
            REQUIRE(kh_h(d) == kh_classical(d));
        }
    }

    TEST_CASE("euler characteristic of every slice")
    {
        std::mt19937_64 rng(52);
        for (int k = 0; k < 60; ++k) {
            RandomDiagramSpec spec;
            spec.genus = k % 3;
            const Diagram d = random_diagram(rng, spec);
            for (Flavor f : {Flavor::classical, Flavor::homotopical}) {
                ComplexOptions o;
                o.flavor = f;
                const KhovanovComplex c(d, o);
                std::map<std::pair<int, GradingElem>, long> chain, hom;
                for (const auto& s : c.slices())
                    for (std::size_t q = 0; q < s.generators.size(); ++q) {
                        const int i = s.min_i + static_cast<int>(q);
                        chain[{s.j, s.h}] += (i % 2 ? -1 : 1) * static_cast<long>(s.generators[q].size());
                    }
                for (const auto& e : homology(c).entries)
                    hom[{e.j, e.h}] += (e.i % 2 ? -1 : 1) * e.dim;
                std::erase_if(chain, [](const auto& kv) { return kv.second == 0; });
                std::erase_if(hom, [](const auto& kv) { return kv.second == 0; });
                REQUIRE(chain == hom);
            }
        }
    }

    TEST_CASE("simple curves")
    {
        const ConjClass a = cls("a", 1);
        const HomologyTable t = kh_h(test_corpus::load("torus_loop_a"));
        REQUIRE(t.entries.size() == 2);
        CHECK(t.entries[0] == HomologyEntry{0, -1, grading_term(a, -1), 1});
        CHECK(t.entries[1] == HomologyEntry{0, 1, grading_term(a, 1), 1});
        CHECK(t.total_dim() == 2);

        const HomologyTable u = kh_h(free_loop_diagram(1, Word{}));
        REQUIRE(u.entries.size() == 2);
        CHECK(u.entries[0] == HomologyEntry{0, -1, GradingElem{}, 1});
        CHECK(u.entries[1] == HomologyEntry{0, 1, GradingElem{}, 1});
        CHECK(flatten(u) == oracle::classical_kh(test_corpus::load("unknot")));
    }

    TEST_CASE("free loops are told apart exactly by their classes")
    {
        std::mt19937_64 rng(53);
        std::uniform_int_distribution<int> len(0, 6);
        for (int genus = 1; genus <= 2; ++genus) {
            const SurfaceBackend b(genus);
            std::vector<Word> words;
            for (int k = 0; k < 40; ++k)
                words.push_back(random_word(rng, genus, len(rng)));
            // Include conjugates and inverses so that equal classes occur.
            for (int k = 0; k < 20; ++k) {
                const Word u = random_word(rng, genus, 2);
                words.push_back(u * words[static_cast<std::size_t>(k)] * u.inverse());
                words.push_back(words[static_cast<std::size_t>(k)].inverse());
            }
            std::vector<HomologyTable> tables;
            for (const Word& w : words)
                tables.push_back(kh_h(free_loop_diagram(genus, w)));
            int equal_pairs = 0;
            for (std::size_t x = 0; x < words.size(); ++x)
                for (std::size_t y = x + 1; y < words.size(); ++y) {
                    const bool same = b.canonical_class(words[x]) == b.canonical_class(words[y]);
                    equal_pairs += same;
                    REQUIRE(same == (tables[x] == tables[y]));
                }
            CHECK(equal_pairs >= 40);
        }
    }

    TEST_CASE("compare and remap")
    {
        const HomologyTable r = kh_classical(test_corpus::load("trefoil_right"));
        const HomologyTable l = kh_classical(test_corpus::load("trefoil_left"));
        CHECK(compare(r, r) == std::nullopt);
        CHECK(compare(r, l).has_value());
        CHECK(compare(r, l, negate_gradings) == std::nullopt);
        const auto diff = compare(r, kh_classical(test_corpus::load("unknot")));
        REQUIRE(diff);
        CHECK(diff->find("(0,") != std::string::npos);

        const HomologyEntry e{1, 2, grading_term(cls("a", 1), 3), 4};
        const HomologyEntry n = negate_gradings(e);
        CHECK(n.i == -1);
        CHECK(n.j == -2);
        CHECK(n.h == grading_term(cls("a", 1), -3));
        CHECK(n.dim == 4);
    }

    TEST_CASE("normalize merges and sorts")
    {
        HomologyTable t;
        t.entries = {{1, 0, {}, 1}, {0, 2, {}, 1}, {0, 2, {}, 2}, {0, -2, {}, 0}};
        normalize(t);
        REQUIRE(t.entries.size() == 2);
        CHECK(t.entries[0] == HomologyEntry{0, 2, {}, 3});
        CHECK(t.entries[1] == HomologyEntry{1, 0, {}, 1});
    }

    TEST_CASE("reports")
    {
        const HomologyTable t = kh_h(test_corpus::load("torus_loop_a"));
        const std::string text = poincare_report(t, ReportFormat::text, Flavor::homotopical);
        CHECK(text.find("(0,-1,-1*[a]) : 1\n") != std::string::npos);
        CHECK(text.find("(0,1,1*[a]) : 1\n") != std::string::npos);
        CHECK(text.find("# [a] = (1,0)") != std::string::npos);

        HomologyTable empty;
        const std::string header = poincare_report(empty, ReportFormat::text, Flavor::classical);
        CHECK(header == "# classical homology, genus 0, total dimension 0\n");

        const std::string tsv = poincare_report(t, ReportFormat::tsv, Flavor::homotopical);
        CHECK(tsv == "i\tj\th\tdim\n0\t-1\t-1*[a]\t1\n0\t1\t1*[a]\t1\n");

        const auto json = nlohmann::json::parse(poincare_report(t, ReportFormat::json, Flavor::homotopical, "abc"));
        CHECK(json["diagram"] == "abc");
        CHECK(json["flavor"] == "homotopical");
        REQUIRE(json["table"].size() == 2);
        CHECK(json["table"][1]["i"] == 0);
        CHECK(json["table"][1]["j"] == 1);
        CHECK(json["table"][1]["h"] == "1*[a]");
        CHECK(json["table"][1]["dim"] == 1);

        const std::string ex = poincare_report(kh_h(test_corpus::load("torus_example")), ReportFormat::text,
                                               Flavor::homotopical);
        CHECK(ex.find("(0,2,2*[") != std::string::npos);
        CHECK(ex.find("(0,-2,-2*[") != std::string::npos);
    }

    TEST_CASE("reports are deterministic")
    {
        const Diagram d = test_corpus::load("genus2_braid");
        const std::string a = poincare_report(kh_h(d), ReportFormat::text, Flavor::homotopical);
        const std::string b = poincare_report(kh_h(d), ReportFormat::text, Flavor::homotopical);
        CHECK(a == b);
    }

    TEST_CASE("unshifted gradings")
    {
        ComplexOptions o;
        o.shift = false;
        const HomologyTable t = kh_classical(test_corpus::load("trefoil_left"), o);
        // All three crossings are negative: undoing i -= 3, j -= 6.
        const HomologyTable s = kh_classical(test_corpus::load("trefoil_left"));
        CHECK(compare(s, t, [](const HomologyEntry& e) { return HomologyEntry{e.i + 3, e.j + 6, e.h, e.dim}; }) ==
              std::nullopt);
    }
}
