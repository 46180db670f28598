#pragma once

#include <optional>
#include <string>

#include "graphsw/ensembles.hpp"

namespace graphsw {

/// A model loaded from a key=value config file; exactly one of er/cm is set.
struct ParsedModel {
    std::string kind;  // "er" or "cm"
    std::optional<ErModel> er;
    std::optional<CmModel> cm;

    const MarkSpaces& marks() const { return er ? er->marks() : cm->marks(); }
};

/// Keys: model=er|cm, xi1/xi2/theta1/theta2 (comma-separated symbols),
/// p.<x1>:<x2>, q.<t1>:<t2>, and for cm: delta, r.<k>, gamma.<x1>:<x2>, K.
/// Lines starting with '#' are comments. Unknown keys are rejected.
ParsedModel parseModelConfig(const std::string& text);
ParsedModel loadModelConfig(const std::string& path);

}  // namespace graphsw
