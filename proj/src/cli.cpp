#include "hkh/cli.hpp"

#include "hkh/builders.hpp"
#include "hkh/error.hpp"
#include "hkh/io.hpp"
#include "hkh/moves.hpp"
#include "hkh/table1.hpp"

#include <fstream>
#include <sstream>

namespace hkh {

namespace {

struct Loaded {
    Diagram diagram;
    std::string hash;
};

Loaded load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::parse_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return {parse_diagram_json(text), sha256_hex(text)};
}

ComplexOptions options_for(const RunConfig& c)
{
    ComplexOptions o;
    o.flavor = c.flavor;
    o.shift = c.shift;
    return o;
}

HomologyTable table_for(const Diagram& d, const RunConfig& c)
{
    return homology(KhovanovComplex(d, options_for(c)));
}

int compute(const RunConfig& c, std::ostream& out)
{
    const Loaded in = load(c.input);
    out << poincare_report(table_for(in.diagram, c), c.format, c.flavor, in.hash);
    return 0;
}

bool check_d2(const Diagram& d, bool shift, std::ostream& out, const std::string& label)
{
    bool ok = true;
    for (Flavor f : {Flavor::classical, Flavor::homotopical}) {
        ComplexOptions o;
        o.flavor = f;
        o.shift = shift;
        const D2Report r = verify_d2(KhovanovComplex(d, o));
        if (!r.zero) {
            out << "FAIL " << label << " (" << to_string(f) << "): " << r.failure << '\n';
            ok = false;
        }
    }
    return ok;
}

int verify_d2_command(const RunConfig& c, std::ostream& out)
{
    if (!c.input.empty()) {
        const Loaded in = load(c.input);
        const bool ok = check_d2(in.diagram, c.shift, out, c.input);
        if (ok)
            out << "all slices zero\n";
        return ok ? 0 : 1;
    }
    std::mt19937_64 rng(c.seed);
    int failures = 0;
    for (int k = 0; k < c.fuzz; ++k) {
        RandomDiagramSpec spec;
        spec.genus = k % 3;
        spec.max_crossings = 8;
        const Diagram d = random_diagram(rng, spec);
        if (!check_d2(d, c.shift, out, "random diagram " + std::to_string(k)))
            ++failures;
    }
    out << (c.fuzz - failures) << "/" << c.fuzz << " random diagrams: "
        << (failures ? "d o d != 0 found" : "all slices zero") << '\n';
    return failures ? 1 : 0;
}

int verify_moves(const RunConfig& c, std::ostream& out)
{
    const Loaded in = load(c.input);
    const HomologyTable before = table_for(in.diagram, c);
    int passed = 0, total = 0;
    auto check = [&](const Diagram& d, const std::string& label) {
        ++total;
        const auto diff = compare(before, table_for(d, c));
        if (diff) {
            out << "FAIL " << label << ": " << *diff << '\n';
        } else {
            out << "ok " << label << '\n';
            ++passed;
        }
    };
    if (!c.moves.empty()) {
        // Explicit moves are applied in sequence.
        Diagram d = in.diagram;
        std::string path;
        for (const MoveSpec& m : parse_moves(c.moves)) {
            d = apply_move(d, m);
            path += (path.empty() ? "" : " ; ") + to_string(m);
            check(d, path);
        }
    } else {
        for (const MoveSpec& m : enumerate_sites(in.diagram))
            check(apply_move(in.diagram, m), to_string(m));
    }
    out << passed << "/" << total << " moves preserve the table\n";
    return passed == total ? 0 : 1;
}

int verify_table1_command(std::ostream& out)
{
    const auto report = verify_table1();
    std::size_t good = 0;
    for (const CellReport& r : report) {
        const bool ok = r.printed_holds && r.matches_dispatch;
        good += ok;
        out << (ok ? "ok   " : "FAIL ") << r.row << ' ' << r.column;
        if (!r.printed_holds)
            out << " sides differ at " << r.witness;
        else if (!r.matches_dispatch)
            out << " " << r.witness;
        out << '\n';
    }
    out << good << "/" << report.size() << " cells hold\n";
    return good == report.size() ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        if (config.input.empty() && config.command != Command::verify_table1 && config.command != Command::verify_d2) {
            err << "error: an input diagram is required\n";
            return 2;
        }
        if (!config.input.empty()) {
            // Report every validation problem before doing any work.
            const Loaded in = load(config.input);
            const auto violations = validate(in.diagram);
            if (!violations.empty()) {
                for (const Violation& v : violations)
                    err << v.kind << ": " << v.message << '\n';
                return 2;
            }
        }
        switch (config.command) {
        case Command::compute: return compute(config, out);
        case Command::verify_d2: return verify_d2_command(config, out);
        case Command::verify_moves: return verify_moves(config, out);
        case Command::verify_table1: return verify_table1_command(out);
        case Command::dump_cube: out << dump_cube(load(config.input).diagram); return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        const bool input_problem = e.kind() == ErrorKind::parse_error || e.kind() == ErrorKind::malformed_word ||
                                   e.kind() == ErrorKind::precondition_violation ||
                                   e.kind() == ErrorKind::pattern_mismatch || e.kind() == ErrorKind::nonlocal_words;
        return input_problem ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace hkh
