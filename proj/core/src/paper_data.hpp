#pragma once

#include <string>
#include <utility>
#include <vector>

namespace evo1d::detail {

/// (case id, JSON text) for the worked examples under data/paper.
const std::vector<std::pair<std::string, std::string>>& paper_documents();

}  // namespace evo1d::detail
