#include "kpart/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace kpart::io {

using nlohmann::json;

ParseError::ParseError(const std::string & what, int line) :
    InvalidInput(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
{
}

namespace {

    std::ifstream open_input(const std::filesystem::path & path)
    {
        std::ifstream in(path);
        if (! in)
            throw ParseError("cannot open " + path.string());
        return in;
    }

    long long read_integer(std::istringstream & fields, const char * what, int line)
    {
        std::string token;
        if (! (fields >> token))
            throw ParseError(std::string("missing ") + what, line);
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(token, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != token.size() || token.empty())
            throw ParseError(std::string("bad ") + what + " '" + token + "'", line);
        return value;
    }

}

Graph read_graph(std::istream & in)
{
    std::string text;
    int line_no = 0;
    std::optional<Graph> g;
    long long expected = 0;
    std::optional<bool> weighted;
    int header_line = 0;

    while (std::getline(in, text)) {
        ++line_no;
        std::istringstream fields(text);
        std::string tag;
        if (! (fields >> tag) || tag == "c")
            continue;
        if (tag == "p") {
            if (g)
                throw ParseError("second header line", line_no);
            long long n = read_integer(fields, "vertex count", line_no);
            expected = read_integer(fields, "edge count", line_no);
            if (n < 0 || n > 1'000'000)
                throw ParseError("vertex count out of range", line_no);
            if (expected < 0)
                throw ParseError("negative edge count", line_no);
            g.emplace(static_cast<int>(n));
            header_line = line_no;
        } else if (tag == "e") {
            if (! g)
                throw ParseError("edge before the header line", line_no);
            long long u = read_integer(fields, "endpoint", line_no);
            long long v = read_integer(fields, "endpoint", line_no);
            std::string extra;
            bool has_weight = false;
            long long w = 1;
            if (fields >> extra) {
                std::istringstream again(extra);
                w = read_integer(again, "weight", line_no);
                has_weight = true;
            }
            if (fields >> extra)
                throw ParseError("trailing text '" + extra + "'", line_no);
            if (weighted && *weighted != has_weight)
                throw ParseError("edges must be all weighted or all unweighted", line_no);
            weighted = has_weight;
            if (u < 1 || v < 1 || u > g->n() || v > g->n())
                throw ParseError("endpoint out of range", line_no);
            try {
                if (has_weight)
                    g->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Weight>(w));
                else
                    g->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
            } catch (const InvalidInput & e) {
                throw ParseError(e.what(), line_no);
            }
        } else {
            throw ParseError("unknown line type '" + tag + "'", line_no);
        }
    }
    if (! g)
        throw ParseError("missing 'p <n> <m>' header");
    if (static_cast<long long>(g->edge_count()) != expected)
        throw ParseError("header announces " + std::to_string(expected) + " edges, found "
                + std::to_string(g->edge_count()),
            header_line);
    return *g;
}

Graph read_graph_file(const std::filesystem::path & path)
{
    auto in = open_input(path);
    return read_graph(in);
}

void write_graph(std::ostream & out, const Graph & g)
{
    out << "p " << g.n() << ' ' << g.edge_count() << '\n';
    for (const auto & e : g.edges()) {
        out << "e " << e.u << ' ' << e.v;
        if (g.is_weighted())
            out << ' ' << e.weight;
        out << '\n';
    }
}

Objective parse_objective(const std::string & name)
{
    if (name == "decision")
        return Objective::Decision;
    if (name == "count")
        return Objective::Count;
    if (name == "min_weight" || name == "minweight")
        return Objective::MinWeight;
    throw ParseError("unknown objective '" + name + "'");
}

std::string objective_name(Objective objective)
{
    switch (objective) {
    case Objective::Decision:
        return "decision";
    case Objective::Count:
        return "count";
    case Objective::MinWeight:
        return "min_weight";
    }
    return "decision";
}

namespace {

    json parse_json(std::istream & in)
    {
        try {
            return json::parse(in);
        } catch (const json::parse_error & e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
    }

    template <typename T>
    T field(const json & j, const char * key)
    {
        if (! j.is_object() || ! j.contains(key))
            throw ParseError(std::string("missing field '") + key + "'");
        try {
            return j.at(key).get<T>();
        } catch (const json::exception &) {
            throw ParseError(std::string("field '") + key + "' has the wrong type");
        }
    }

    SetMask read_set(const json & elems, int n)
    {
        if (! elems.is_array())
            throw ParseError("a set must be an array of elements");
        SetMask s = 0;
        for (const auto & e : elems) {
            if (! e.is_number_integer())
                throw ParseError("set elements must be integers");
            long long v = e.get<long long>();
            if (v < 1 || v > n)
                throw ParseError("set element " + std::to_string(v) + " outside 1.." + std::to_string(n));
            if (contains(s, static_cast<Vertex>(v)))
                throw ParseError("set lists element " + std::to_string(v) + " twice");
            s |= element_bit(static_cast<Vertex>(v));
        }
        return s;
    }

}

PartitionInstance read_instance(std::istream & in)
{
    json j = parse_json(in);
    PartitionInstance inst;
    inst.n = field<int>(j, "n");
    inst.k = field<int>(j, "k");
    if (inst.n < 0 || inst.n > 62)
        throw ParseError("n must lie in 0..62");
    if (inst.k < 0)
        throw ParseError("k must be nonnegative");
    std::string structure = j.value("structure", std::string("partition"));
    if (structure == "partition")
        inst.structure = Structure::Partition;
    else if (structure == "cover")
        inst.structure = Structure::Cover;
    else
        throw ParseError("unknown structure '" + structure + "'");
    inst.objective = parse_objective(j.value("objective", std::string("decision")));

    auto families = field<json>(j, "families");
    if (! families.is_array())
        throw ParseError("'families' must be an array");
    for (const auto & fam : families) {
        if (! fam.is_array())
            throw ParseError("each family must be an array of sets");
        std::vector<FamilyMember> members;
        for (const auto & m : fam) {
            FamilyMember member;
            if (m.is_array()) {
                member.set = read_set(m, inst.n);
            } else {
                member.set = read_set(field<json>(m, "set"), inst.n);
                member.weight = m.value("weight", Weight{0});
                member.multiplicity = m.value("multiplicity", std::uint64_t{1});
            }
            members.push_back(member);
        }
        try {
            inst.providers.push_back(FamilyProvider::explicit_sets(std::move(members)));
        } catch (const InvalidInput & e) {
            throw ParseError(e.what());
        }
    }
    if (inst.providers.size() == 1 && inst.k > 1)
        inst.providers.assign(static_cast<std::size_t>(inst.k), inst.providers.front());
    if (static_cast<int>(inst.providers.size()) != inst.k)
        throw ParseError("expected " + std::to_string(inst.k) + " families, found "
            + std::to_string(inst.providers.size()));
    return inst;
}

PartitionInstance read_instance_file(const std::filesystem::path & path)
{
    auto in = open_input(path);
    return read_instance(in);
}

void write_instance(std::ostream & out, const PartitionInstance & inst)
{
    json families = json::array();
    for (const auto & p : inst.providers) {
        json fam = json::array();
        p.enumerate([&](const FamilyMember & m) {
            json entry{{"set", mask_elements(m.set)}, {"weight", m.weight}};
            if (m.multiplicity != 1)
                entry["multiplicity"] = m.multiplicity;
            fam.push_back(std::move(entry));
        });
        families.push_back(std::move(fam));
    }
    json j{{"n", inst.n}, {"k", inst.k},
        {"structure", inst.structure == Structure::Cover ? "cover" : "partition"},
        {"objective", objective_name(inst.objective)}, {"families", std::move(families)}};
    out << j.dump() << '\n';
}

InfantSystem read_infant_system(std::istream & in)
{
    json j = parse_json(in);
    InfantSystem sys;
    auto families = field<json>(j, "families");
    if (! families.is_array())
        throw ParseError("'families' must be an array");
    int largest = 0;
    for (const auto & fam : families) {
        InfantFamily f;
        f.members = field<std::vector<Vertex>>(fam, "members");
        f.infant = field<Vertex>(fam, "infant");
        if (std::set<Vertex>(f.members.begin(), f.members.end()).size() != f.members.size())
            throw ParseError("a family lists a member twice");
        largest = std::max(largest, static_cast<int>(f.members.size()));
        sys.families.push_back(std::move(f));
    }
    sys.q = j.contains("q") ? field<int>(j, "q") : std::max(largest, 2);
    return sys;
}

InfantSystem read_infant_system_file(const std::filesystem::path & path)
{
    auto in = open_input(path);
    return read_infant_system(in);
}

}
