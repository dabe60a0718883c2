#ifndef PCP_IO_HPP
#define PCP_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pcp/dataset.hpp"
#include "pcp/graph.hpp"

namespace pcp {

/// Header of variable names, one sample per line, full double precision.
void write_dataset_csv(std::ostream& out, const Dataset& data);
Dataset read_dataset_csv(std::istream& in);

/// Edge-list text format, one edge per line:
///     NAME1 MARK NAME2 [ambiguous]
/// with MARK one of ---, -->, <--, <->. Lines are written sorted, so the
/// output is canonical. The reader resolves names against the given
/// vertex universe.
void write_graph(std::ostream& out, const MixedGraph& graph, std::span<const std::string> names);
MixedGraph read_graph(std::istream& in, std::span<const std::string> names);

std::string format_double(double v);

}  // namespace pcp

#endif
