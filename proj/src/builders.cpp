#include "hkh/builders.hpp"

#include "hkh/error.hpp"

#include <algorithm>
#include <map>

namespace hkh {

Diagram braid_closure(int strands, const std::vector<int>& generators, int genus,
                      const std::vector<Word>& closure_words)
{
    if (strands < 1)
        throw Error(ErrorKind::precondition_violation, "a braid needs at least one strand");
    Diagram d;
    d.genus = genus;
    auto closure_word = [&](int p) {
        return static_cast<std::size_t>(p) < closure_words.size() ? closure_words[static_cast<std::size_t>(p)] : Word{};
    };

    // current[p]: id of the edge now leaving position p downwards.
    std::vector<int> current(static_cast<std::size_t>(strands));
    for (int p = 0; p < strands; ++p)
        current[static_cast<std::size_t>(p)] = p;
    int next_id = strands;
    std::vector<bool> touched(static_cast<std::size_t>(strands), false);

    for (int g : generators) {
        const int i = std::abs(g) - 1;
        if (g == 0 || i + 1 >= strands)
            throw Error(ErrorKind::precondition_violation, "braid generator " + std::to_string(g) + " out of range");
        const int left = current[static_cast<std::size_t>(i)], right = current[static_cast<std::size_t>(i + 1)];
        const int out_left = next_id++, out_right = next_id++;
        Crossing c;
        c.id = static_cast<int>(d.crossings.size());
        if (g > 0) {
            c.slots = {right, out_right, out_left, left};
            c.sign = 1;
        } else {
            c.slots = {left, right, out_right, out_left};
            c.sign = -1;
        }
        d.crossings.push_back(c);
        current[static_cast<std::size_t>(i)] = out_left;
        current[static_cast<std::size_t>(i + 1)] = out_right;
        touched[static_cast<std::size_t>(i)] = touched[static_cast<std::size_t>(i + 1)] = true;
    }

    // Close up: the last edge at each position becomes the closing arc.
    std::map<int, int> rename;
    for (int p = 0; p < strands; ++p)
        if (touched[static_cast<std::size_t>(p)])
            rename[current[static_cast<std::size_t>(p)]] = p;
    for (Crossing& c : d.crossings)
        for (int& e : c.slots)
            if (auto it = rename.find(e); it != rename.end())
                e = it->second;

    for (int p = 0; p < strands; ++p) {
        if (touched[static_cast<std::size_t>(p)])
            d.edges.push_back({p, closure_word(p)});
        else
            d.free_loops.push_back(closure_word(p));
    }
    for (int id = strands; id < next_id; ++id)
        if (!rename.count(id))
            d.edges.push_back({id, Word{}});
    return d;
}

Diagram free_loop_diagram(int genus, const Word& w)
{
    Diagram d;
    d.genus = genus;
    d.free_loops.push_back(w);
    return d;
}

Word random_word(std::mt19937_64& rng, int genus, int length)
{
    Word w;
    if (genus < 1)
        return w;
    std::uniform_int_distribution<int> code(0, 4 * genus - 1);
    for (int k = 0; k < length; ++k)
        w.letters.push_back(Letter::from_code(code(rng)));
    return w;
}

Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramSpec& spec)
{
    std::uniform_int_distribution<int> count(spec.min_crossings, spec.max_crossings);
    std::uniform_int_distribution<int> len(1, std::max(1, spec.max_word_length));
    std::bernoulli_distribution decorate(spec.genus > 0 ? spec.word_probability : 0.0);
    std::bernoulli_distribution loop(spec.free_loop_probability);
    std::bernoulli_distribution positive(0.5);

    const int n = count(rng);
    Diagram d;
    d.genus = spec.genus;
    std::vector<std::pair<int, int>> outs, ins;  // (crossing, slot)
    for (int c = 0; c < n; ++c) {
        Crossing x;
        x.id = c;
        x.sign = positive(rng) ? 1 : -1;
        d.crossings.push_back(x);
        ins.emplace_back(c, 0);
        ins.emplace_back(c, x.sign > 0 ? 3 : 1);
        outs.emplace_back(c, 2);
        outs.emplace_back(c, x.sign > 0 ? 1 : 3);
    }
    std::shuffle(ins.begin(), ins.end(), rng);
    for (std::size_t k = 0; k < outs.size(); ++k) {
        const int id = static_cast<int>(k);
        d.crossings[static_cast<std::size_t>(outs[k].first)].slots[static_cast<std::size_t>(outs[k].second)] = id;
        d.crossings[static_cast<std::size_t>(ins[k].first)].slots[static_cast<std::size_t>(ins[k].second)] = id;
        d.edges.push_back({id, decorate(rng) ? random_word(rng, spec.genus, len(rng)) : Word{}});
    }
    while (loop(rng))
        d.free_loops.push_back(decorate(rng) ? random_word(rng, spec.genus, len(rng)) : Word{});
    return d;
}

}  // namespace hkh
