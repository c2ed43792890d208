#include "hkh/io.hpp"

#include "hkh/error.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace hkh {

namespace {

using nlohmann::json;

std::string line_col(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw Error(ErrorKind::parse_error, field + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end())
        field_error(where, std::string("missing \"") + key + "\"");
    return *it;
}

int as_int(const json& v, const std::string& field)
{
    if (!v.is_number_integer())
        field_error(field, "expected an integer");
    const auto x = v.get<long long>();
    if (x < -(1LL << 30) || x > (1LL << 30))
        field_error(field, "integer out of range");
    return static_cast<int>(x);
}

Word as_word(const json& v, const std::string& field, int genus)
{
    if (!v.is_string())
        field_error(field, "expected a word string");
    try {
        return parse_word(v.get<std::string>(), genus);
    } catch (const Error& e) {
        field_error(field, e.what());
    }
}

}  // namespace

Diagram parse_diagram_json(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::parse_error, line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON");
    }
    if (!root.is_object())
        field_error("<root>", "expected an object");

    Diagram d;
    d.genus = as_int(member(root, "genus", "<root>"), "genus");
    if (d.genus < 0)
        field_error("genus", "must be nonnegative");

    if (auto it = root.find("edges"); it != root.end()) {
        if (!it->is_array())
            field_error("edges", "expected an array");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const std::string where = "edges[" + std::to_string(k) + "]";
            const json& e = (*it)[k];
            if (!e.is_object())
                field_error(where, "expected an object");
            Edge edge;
            edge.id = as_int(member(e, "id", where), where + ".id");
            if (auto w = e.find("word"); w != e.end())
                edge.word = as_word(*w, where + ".word", d.genus);
            d.edges.push_back(std::move(edge));
        }
    }
    if (auto it = root.find("crossings"); it != root.end()) {
        if (!it->is_array())
            field_error("crossings", "expected an array");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const std::string where = "crossings[" + std::to_string(k) + "]";
            const json& c = (*it)[k];
            if (!c.is_object())
                field_error(where, "expected an object");
            Crossing x;
            x.id = as_int(member(c, "id", where), where + ".id");
            const json& slots = member(c, "slots", where);
            if (!slots.is_array() || slots.size() != 4)
                field_error(where + ".slots", "expected 4 edge ids");
            for (std::size_t s = 0; s < 4; ++s)
                x.slots[s] = as_int(slots[s], where + ".slots[" + std::to_string(s) + "]");
            if (auto sg = c.find("sign"); sg != c.end()) {
                x.sign = as_int(*sg, where + ".sign");
                if (x.sign != 1 && x.sign != -1)
                    field_error(where + ".sign", "must be 1 or -1");
            }
            d.crossings.push_back(x);
        }
    }
    if (auto it = root.find("free_loops"); it != root.end()) {
        if (!it->is_array())
            field_error("free_loops", "expected an array");
        for (std::size_t k = 0; k < it->size(); ++k)
            d.free_loops.push_back(as_word((*it)[k], "free_loops[" + std::to_string(k) + "]", d.genus));
    }
    return d;
}

Diagram load_diagram(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::parse_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_diagram_json(buf.str());
}

std::string diagram_to_json(const Diagram& input)
{
    const Diagram d = oriented(input);
    nlohmann::ordered_json root;
    root["genus"] = d.genus;
    root["edges"] = json::array();
    for (const Edge& e : d.edges)
        root["edges"].push_back({{"id", e.id}, {"word", to_string(e.word, d.genus)}});
    root["crossings"] = json::array();
    for (const Crossing& c : d.crossings)
        root["crossings"].push_back({{"id", c.id}, {"slots", c.slots}, {"sign", c.sign}});
    root["free_loops"] = json::array();
    for (const Word& w : d.free_loops)
        root["free_loops"].push_back(to_string(w, d.genus));
    return root.dump(2) + "\n";
}

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::parse_error, "SHA-256 failed");
    std::ostringstream out;
    for (unsigned int k = 0; k < len; ++k)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
    return out.str();
}

}  // namespace hkh
