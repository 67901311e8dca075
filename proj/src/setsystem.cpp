#include "transrep/setsystem.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace transrep {

namespace {

using OrderedJson = nlohmann::ordered_json;

// nlohmann keeps the last value for a repeated object key, so duplicate set
// names have to be caught while parsing.
bool object_has_duplicate_keys(const std::string& text) {
    bool duplicate = false;
    std::vector<std::set<std::string>> keys_per_depth;
    nlohmann::json::parser_callback_t cb = [&](int depth, nlohmann::json::parse_event_t event,
                                               nlohmann::json& parsed) {
        if (event == nlohmann::json::parse_event_t::object_start) {
            keys_per_depth.resize(std::max<std::size_t>(keys_per_depth.size(), depth + 1));
            keys_per_depth[depth].clear();
        } else if (event == nlohmann::json::parse_event_t::key) {
            if (depth > 0 && static_cast<std::size_t>(depth - 1) < keys_per_depth.size() &&
                !keys_per_depth[depth - 1].insert(parsed.get<std::string>()).second)
                duplicate = true;
        }
        return true;
    };
    std::ignore = nlohmann::json::parse(text, cb);
    return duplicate;
}

SetSystem parse_json_system(const std::string& text) {
    OrderedJson doc;
    try {
        doc = OrderedJson::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("elements") || !doc.contains("sets"))
        throw ParseError("set system JSON needs \"elements\" and \"sets\"");
    std::vector<std::string> elements;
    try {
        elements = doc["elements"].get<std::vector<std::string>>();
    } catch (const std::exception&) {
        throw ParseError("\"elements\" must be an array of strings");
    }
    if (!doc["sets"].is_object()) throw ParseError("\"sets\" must be an object");
    if (object_has_duplicate_keys(text)) throw ParseError("duplicate set name in \"sets\"");

    std::vector<std::pair<std::string, std::vector<std::string>>> sets;
    for (const auto& [name, members] : doc["sets"].items()) {
        if (!members.is_array()) throw ParseError("set \"" + name + "\" must be an array");
        std::vector<std::string> names;
        for (const auto& m : members) {
            if (!m.is_string()) throw ParseError("set \"" + name + "\" has a non-string member");
            names.push_back(m.get<std::string>());
        }
        sets.emplace_back(name, std::move(names));
    }
    return SetSystem::make(std::move(elements), sets);
}

SetSystem parse_dense_system(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> elements;
    bool have_header = false;
    std::vector<std::pair<std::string, std::vector<std::string>>> sets;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (!have_header) {
            elements = tokens;
            have_header = true;
            continue;
        }
        ++row;
        std::string name, bits;
        if (tokens.size() == 1) {
            name = "A" + std::to_string(row);
            bits = tokens[0];
        } else if (tokens.size() == 2) {
            name = tokens[0];
            bits = tokens[1];
        } else {
            throw ParseError("dense row " + std::to_string(row) +
                             ": expected [name] <0/1 string>");
        }
        if (bits.size() != elements.size())
            throw ParseError("dense row " + std::to_string(row) + " has " +
                             std::to_string(bits.size()) + " entries, expected " +
                             std::to_string(elements.size()));
        std::vector<std::string> members;
        for (std::size_t j = 0; j < bits.size(); ++j) {
            if (bits[j] == '1')
                members.push_back(elements[j]);
            else if (bits[j] != '0')
                throw ParseError("dense row " + std::to_string(row) + ": entry '" +
                                 std::string(1, bits[j]) + "' is not 0 or 1");
        }
        sets.emplace_back(std::move(name), std::move(members));
    }
    if (!have_header) throw ParseError("dense document lacks an element header line");
    return SetSystem::make(std::move(elements), sets);
}

}  // namespace

SetSystem SetSystem::make(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& sets) {
    SetSystem sys;
    sys.elements = std::move(elements);
    std::set<std::string> seen_elements;
    for (const auto& e : sys.elements)
        if (!seen_elements.insert(e).second) throw ParseError("duplicate element name '" + e + "'");
    std::set<std::string> seen_sets;
    for (const auto& [name, members] : sets) {
        if (!seen_sets.insert(name).second) throw ParseError("duplicate set name '" + name + "'");
        NamedSet s;
        s.name = name;
        for (const auto& member : members) {
            auto idx = sys.element_index(member);
            if (!idx)
                throw ParseError("set '" + name + "' references unknown element '" + member + "'");
            s.members.push_back(*idx);
        }
        std::sort(s.members.begin(), s.members.end());
        s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
        sys.sets.push_back(std::move(s));
    }
    return sys;
}

SetSystem parse_set_system(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty set system document");
    if (text[first] == '{') return parse_json_system(text);
    return parse_dense_system(text);
}

std::string to_json_text(const SetSystem& sys) {
    OrderedJson doc;
    doc["elements"] = sys.elements;
    OrderedJson sets = OrderedJson::object();
    for (const NamedSet& s : sys.sets) {
        OrderedJson members = OrderedJson::array();
        for (std::size_t j : s.members) members.push_back(sys.elements[j]);
        sets[s.name] = std::move(members);
    }
    doc["sets"] = std::move(sets);
    return doc.dump();
}

std::string to_dense_text(const SetSystem& sys) {
    std::ostringstream out;
    for (std::size_t j = 0; j < sys.elements.size(); ++j)
        out << (j ? " " : "") << sys.elements[j];
    out << '\n';
    for (const NamedSet& s : sys.sets) {
        out << s.name << ' ';
        for (std::size_t j = 0; j < sys.elements.size(); ++j)
            out << (sys.contains(&s - sys.sets.data(), j) ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

IncidenceMatrix incidence(const SetSystem& sys) {
    IncidenceMatrix m(sys.set_count(), sys.ground_size());
    for (std::size_t i = 0; i < sys.set_count(); ++i)
        for (std::size_t j : sys.sets[i].members) m.at(i, j) = 1;
    return m;
}

NormalizeResult normalize(const SetSystem& sys) {
    NormalizeResult result;
    result.system.elements = sys.elements;
    for (const NamedSet& s : sys.sets) {
        if (s.members.empty())
            result.dropped.push_back(s.name);
        else
            result.system.sets.push_back(s);
    }
    return result;
}

SplitResult split_partition(const SetSystem& sys) {
    for (const NamedSet& s : sys.sets)
        if (s.members.empty())
            throw std::invalid_argument("split requires a normalized system (set '" + s.name +
                                        "' is empty)");
    const std::size_t m = sys.set_count(), n = sys.ground_size();
    SplitResult split;
    split.partition = IncidenceMatrix(m, n);
    split.anchor_row.assign(n, std::nullopt);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            if (sys.contains(i, j)) {
                split.anchor_row[j] = i;
                split.partition.at(i, j) = 1;
                break;
            }
        }
    }
    // one indeterminate per non-anchor incidence, ordered by (element, set)
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (sys.contains(i, j) && split.anchor_row[j] != i)
                split.indeterminates.push_back({i, j});
    return split;
}

}  // namespace transrep
