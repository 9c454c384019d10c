#pragma once

#include "kpart/engine.hpp"
#include "kpart/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace kpart::io {

/// Malformed input; `line` is 1-based, or 0 when the error is not tied to one.
class ParseError : public InvalidInput
{
public:
    ParseError(const std::string & what, int line = 0);
    int line() const { return line_; }

private:
    int line_;
};

/// Text graph format: `p <n> <m>` header, then m lines `e <u> <v> [w]`.
/// Lines starting with `c` and blank lines are skipped. Either every edge has
/// a weight or none does.
Graph read_graph(std::istream & in);
Graph read_graph_file(const std::filesystem::path & path);
void write_graph(std::ostream & out, const Graph & g);

/// Explicit instance: {"n", "k", "structure": "partition"|"cover",
/// "objective": "decision"|"count"|"min_weight", "families": [[{"set": [..],
/// "weight": w}, ..], ..]}. A single family is reused for every part when
/// "families" has one entry and k > 1.
PartitionInstance read_instance(std::istream & in);
PartitionInstance read_instance_file(const std::filesystem::path & path);
void write_instance(std::ostream & out, const PartitionInstance & inst);

/// {"families": [{"members": [..], "infant": r}, ..], "q": q}; q defaults to
/// the largest family size.
InfantSystem read_infant_system(std::istream & in);
InfantSystem read_infant_system_file(const std::filesystem::path & path);

Objective parse_objective(const std::string & name);
std::string objective_name(Objective objective);

}
