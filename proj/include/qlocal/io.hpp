#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "qlocal/sim.hpp"

namespace qlocal::io {

// Statevector dump: 16-byte header "QSV1" + n as a little-endian 4-byte
// integer + 8 reserved zero bytes, then 2^{n+1} little-endian doubles with
// re/im interleaved.
std::string dump_statevector(const sim::StateVector& s);
sim::StateVector load_statevector(const std::string& bytes);

void save_statevector(const sim::StateVector& s,
                      const std::filesystem::path& path);
sim::StateVector load_statevector_file(const std::filesystem::path& path);

// Writes via a temp file and rename so partial outputs never appear.
void atomic_write(const std::filesystem::path& path,
                  const std::string& contents);

std::string read_file(const std::filesystem::path& path);

// FNV-1a 64-bit content hash, hex-encoded; the integrity check used by
// experiment manifests.
std::string content_hash(const std::string& bytes);

}  // namespace qlocal::io
