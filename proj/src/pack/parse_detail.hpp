#pragma once

// Line-tracking variants of the table parsers, used by the loader to place
// cross-file diagnostics on the row that caused them.

#include <vector>

#include "sonia/pack/content_pack.hpp"

namespace sonia::pack::detail {

Checked<std::vector<StructureDef>> parse_structures(std::string_view text, const std::string& file,
                                                    std::vector<std::size_t>* lines);

Checked<std::vector<ConnectionDef>> parse_connections(std::string_view text,
                                                      const std::vector<StructureDef>& structures,
                                                      const std::vector<SubsystemDef>& subsystems,
                                                      const std::string& file,
                                                      std::vector<std::size_t>* lines);

Checked<ConnectivityMatrix> parse_matrix(std::string_view text,
                                         const std::vector<std::string>& expected_ids,
                                         const std::string& file,
                                         std::vector<std::size_t>* row_lines);

}  // namespace sonia::pack::detail
