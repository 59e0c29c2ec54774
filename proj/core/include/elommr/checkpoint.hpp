#pragma once

// Checkpoint text format (version 1):
//
//   elommr-checkpoint 1
//   players <count>
//   <id> <p0> <w0> <mu> <sigma> <contests> <last-round> <k> [<p> <beta> <w>]{k}
//
// One line per player, sorted by id. Numbers are written in their shortest
// round-trip form, so save -> load reproduces every field bit for bit.

#include <filesystem>
#include <iosfwd>

#include "elommr/system.hpp"

namespace elommr {

inline constexpr int kCheckpointVersion = 1;

void save_checkpoint(const PlayerMap& states, std::ostream& out);
void save_checkpoint(const PlayerMap& states, const std::filesystem::path& path);

// Throws Error(kVersion) for a foreign or mismatched header and Error(kParse)
// for any malformed record.
PlayerMap load_checkpoint(std::istream& in);
PlayerMap load_checkpoint(const std::filesystem::path& path);

}  // namespace elommr
