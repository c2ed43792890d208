#pragma once

#include "hkh/diagram.hpp"

#include <random>
#include <vector>

namespace hkh {

/// Closure of a braid on `strands` strands. Generator +i crosses strands
/// i and i+1 positively, -i negatively (1-based). `closure_words[p]`, if
/// given, decorates the closing arc at position p.
Diagram braid_closure(int strands, const std::vector<int>& generators, int genus = 0,
                      const std::vector<Word>& closure_words = {});

/// Zero-crossing diagram with a single free loop.
Diagram free_loop_diagram(int genus, const Word& w);

struct RandomDiagramSpec {
    int genus = 1;
    int min_crossings = 1;
    int max_crossings = 6;
    int max_word_length = 2;
    double word_probability = 0.4;  ///< chance that an edge carries a word
    double free_loop_probability = 0.1;
};

/// Random signs and a uniformly random matching of outgoing to incoming
/// slots, with short random edge words. The result is always valid.
Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramSpec& spec);

Word random_word(std::mt19937_64& rng, int genus, int length);

}  // namespace hkh
