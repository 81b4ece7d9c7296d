#include "qlocal/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace qlocal::io {

static_assert(std::endian::native == std::endian::little,
              "dump format assumes a little-endian host");

std::string dump_statevector(const sim::StateVector& s) {
  std::string out;
  out.reserve(16 + 16 * static_cast<std::size_t>(s.amps.size()));
  out.append("QSV1", 4);
  const std::uint32_t n = static_cast<std::uint32_t>(s.n);
  out.append(reinterpret_cast<const char*>(&n), 4);
  out.append(8, '\0');
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
    const double re = s.amps(i).real();
    const double im = s.amps(i).imag();
    out.append(reinterpret_cast<const char*>(&re), 8);
    out.append(reinterpret_cast<const char*>(&im), 8);
  }
  return out;
}

sim::StateVector load_statevector(const std::string& bytes) {
  if (bytes.size() < 16 || bytes.compare(0, 4, "QSV1") != 0)
    throw std::invalid_argument("load_statevector: bad header");
  std::uint32_t n = 0;
  std::memcpy(&n, bytes.data() + 4, 4);
  const std::size_t count = std::size_t{1} << n;
  if (bytes.size() != 16 + 16 * count)
    throw std::invalid_argument("load_statevector: truncated payload");
  sim::StateVector s;
  s.n = static_cast<int>(n);
  s.amps = Eigen::VectorXcd(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    double re = 0, im = 0;
    std::memcpy(&re, bytes.data() + 16 + 16 * i, 8);
    std::memcpy(&im, bytes.data() + 16 + 16 * i + 8, 8);
    s.amps(static_cast<Eigen::Index>(i)) = cplx(re, im);
  }
  return s;
}

void save_statevector(const sim::StateVector& s,
                      const std::filesystem::path& path) {
  atomic_write(path, dump_statevector(s));
}

sim::StateVector load_statevector_file(const std::filesystem::path& path) {
  return load_statevector(read_file(path));
}

void atomic_write(const std::filesystem::path& path,
                  const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(contents.data(),
              static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string out((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  return out;
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qlocal::io
