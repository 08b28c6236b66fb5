#include "posmod/report.hpp"

#include "posmod/syntax.hpp"
#include "posmod/workspace.hpp"

#include <sstream>

namespace posmod {

Json to_json(const Structure &s)
{
    const Signature &sig = s.signature();
    Json j;
    j["name"] = s.name();
    j["signature"] = sig.describe();
    j["universe"] = s.size();
    Json functions = Json::object();
    for (std::size_t fi = 0; fi < sig.functions().size(); ++fi) {
        const auto &table = s.function_table(static_cast<int>(fi));
        if (sig.functions()[fi].arity == 0)
            functions[sig.functions()[fi].name] = table[0];
        else
            functions[sig.functions()[fi].name] = table;
    }
    j["functions"] = functions;
    Json relations = Json::object();
    for (std::size_t ri = 0; ri < sig.relations().size(); ++ri) {
        const int arity = sig.relations()[ri].arity;
        const auto &table = s.relation_table(static_cast<int>(ri));
        Json tuples = Json::array();
        for (std::size_t t = 0; t < table.size(); ++t)
            if (table[t] == 1)
                tuples.push_back(s.tuple_at(t, arity));
        relations[sig.relations()[ri].name] = tuples;
    }
    j["relations"] = relations;
    j["dsl"] = render_structure(s);
    return j;
}

Structure structure_from_json(const Json &j, const SignaturePtr &sig)
{
    Structure s(sig, j.at("universe").get<int>());
    s.set_name(j.at("name").get<std::string>());
    for (const auto &[name, value] : j.at("functions").items()) {
        auto fi = sig->function_index(name);
        if (!fi)
            throw UnknownSymbol("unknown function '" + name + "'");
        if (value.is_number())
            s.function_table(*fi) = {value.get<int>()};
        else
            s.function_table(*fi) = value.get<std::vector<int>>();
    }
    for (const auto &[name, tuples] : j.at("relations").items()) {
        auto ri = sig->relation_index(name);
        if (!ri)
            throw UnknownSymbol("unknown relation '" + name + "'");
        for (const auto &t : tuples)
            s.set_relation(*ri, t.get<std::vector<int>>());
    }
    return s;
}

Json to_json(const ModelClass &cls, bool with_members)
{
    Json j;
    j["name"] = cls.name();
    j["signature"] = cls.signature()->describe();
    j["max_size"] = cls.max_size();
    Json counts = Json::object();
    for (int n : cls.sizes())
        counts[std::to_string(n)] = cls.stratum(n).size();
    j["counts"] = counts;
    if (with_members) {
        Json members = Json::array();
        for (const auto &m : cls.members())
            members.push_back(to_json(*m));
        j["members"] = members;
    }
    return j;
}

Json to_json(const NamedMap &m)
{
    Json j;
    j["label"] = m.label;
    j["from"] = m.from;
    j["to"] = m.to;
    j["map"] = m.map;
    return j;
}

Json to_json(const Witness &w)
{
    Json j;
    j["description"] = w.description;
    Json structures = Json::array();
    for (const auto &s : w.structures)
        structures.push_back(to_json(*s));
    j["structures"] = structures;
    Json maps = Json::array();
    for (const auto &m : w.maps)
        maps.push_back(to_json(m));
    j["maps"] = maps;
    j["formula"] = w.formula ? Json(render(*w.formula)) : Json(nullptr);
    j["sentence"] = w.sentence ? Json(render(*w.sentence)) : Json(nullptr);
    j["tuple"] = w.tuple;
    return j;
}

Json to_json(const Verdict &v)
{
    Json j;
    j["holds"] = v.holds;
    j["scope"] = v.scope;
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    j["warnings"] = v.warnings;
    j["notes"] = v.notes;
    return j;
}

Json to_json(const Span &span)
{
    Json j;
    j["apex"] = to_json(*span.apex());
    j["left"] = to_json(*span.left());
    j["right"] = to_json(*span.right());
    j["f"] = span.f.map;
    j["g"] = span.g.map;
    return j;
}

Json to_json(const Square &square)
{
    Json j;
    j["span"] = to_json(square.span);
    j["amalgam"] = to_json(*square.amalgam());
    j["f_prime"] = square.f_prime.map;
    j["g_prime"] = square.g_prime.map;
    return j;
}

Report::Report(std::vector<std::string> command) : command_(std::move(command)), start_(std::chrono::steady_clock::now())
{
}

void Report::set(const std::string &key, Json value) { fields_[key] = std::move(value); }

void Report::add_verdict(const std::string &label, const Verdict &v)
{
    Json entry;
    entry["label"] = label;
    entry["verdict"] = to_json(v);
    verdicts_.push_back(std::move(entry));

    std::string line = label + ": " + (v.holds ? "true" : "false") + "  [" + v.scope + "]";
    lines_.push_back(line);
    if (v.witness) {
        const Witness &w = *v.witness;
        if (!w.description.empty())
            lines_.push_back("  " + w.description);
        for (const auto &m : w.maps) {
            std::string map;
            for (std::size_t i = 0; i < m.map.size(); ++i)
                map += (i ? "," : "") + std::to_string(i) + ":" + std::to_string(m.map[i]);
            lines_.push_back("  " + m.label + ": " + m.from + " -> " + m.to + "  " + map);
        }
        if (w.formula)
            lines_.push_back("  formula: " + render(*w.formula));
        if (w.sentence)
            lines_.push_back("  sentence: " + render(*w.sentence));
        if (!w.tuple.empty()) {
            std::string t;
            for (std::size_t i = 0; i < w.tuple.size(); ++i)
                t += (i ? "," : "") + std::to_string(w.tuple[i]);
            lines_.push_back("  at: (" + t + ")");
        }
        for (const auto &s : w.structures)
            lines_.push_back("  " + render_structure(*s));
    }
    for (const auto &warning : v.warnings)
        lines_.push_back("  warning: " + warning);
    for (const auto &note : v.notes)
        lines_.push_back("  note: " + note);
}

Json Report::json() const
{
    Json j;
    j["command"] = command_;
    j["result"] = fields_;
    j["verdicts"] = verdicts_;
    j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return j;
}

namespace {

// Text form of a field: a structure shows as its DSL at the top level and
// by name when nested.
std::string brief(const Json &value, bool nested)
{
    if (value.is_string())
        return value.get<std::string>();
    if (value.is_array() && !value.empty() && value.front().is_object()) {
        // structures by name, other records itemized in the report lines
        if (!value.front().contains("dsl"))
            return std::to_string(value.size()) + " entries";
        std::string out = "[";
        for (const auto &item : value)
            out += (out.size() > 1 ? ", " : "") + brief(item, true);
        return out + "]";
    }
    if (!value.is_object())
        return value.dump();
    if (value.contains("dsl"))
        return nested ? value["name"].get<std::string>() : value["dsl"].get<std::string>();
    std::string out = "{";
    for (const auto &[key, item] : value.items())
        out += (out.size() > 1 ? ", " : "") + key + ": " + brief(item, true);
    return out + "}";
}

} // namespace

std::string Report::text() const
{
    std::ostringstream out;
    for (const auto &[key, value] : fields_.items())
        out << key << ": " << brief(value, false) << "\n";
    for (const auto &line : lines_)
        out << line << "\n";
    return out.str();
}

} // namespace posmod
