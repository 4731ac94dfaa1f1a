#pragma once

#include <json.hpp>

namespace interpcast {

// Canonical JSON everywhere: insertion-ordered objects so that serialized
// artifacts, checkpoints and request digests are byte-stable across runs.
using ijson = nlohmann::ordered_json;

} // namespace interpcast
