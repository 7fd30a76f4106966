// Versioned little-endian table file for OmegaKernel caches.
//   "QLFOMEGA" | u32 version | u32 j | f64 c, T, h, u0, hu, cutoff | u64 count
//   | count x (f64 value, f64 d1, f64 d2) | u32 crc32 of everything before it

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include <zlib.h>

#include "qlf/omega.hpp"

namespace qlf {

namespace {

constexpr char kMagic[8] = {'Q', 'L', 'F', 'O', 'M', 'E', 'G', 'A'};
constexpr std::uint32_t kVersion = 1;

void put_u(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f(std::string& out, double v) { put_u(out, std::bit_cast<std::uint64_t>(v), 8); }

struct Reader {
  const std::string& buf;
  std::size_t pos = 0;
  std::uint64_t u(int bytes) {
    if (pos + static_cast<std::size_t>(bytes) > buf.size()) throw std::runtime_error("kernel file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{static_cast<unsigned char>(buf[pos++])} << (8 * i);
    return v;
  }
  double f() { return std::bit_cast<double>(u(8)); }
};

std::uint32_t crc_of(const std::string& s, std::size_t n) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(n)));
}

}  // namespace

void OmegaKernel::save(const std::filesystem::path& path) const {
  std::string out(kMagic, sizeof kMagic);
  put_u(out, kVersion, 4);
  put_u(out, static_cast<std::uint64_t>(j_), 4);
  for (double v : {c_, T_, h_, u0_, hu_, cut_}) put_f(out, v);
  put_u(out, val_.size(), 8);
  for (std::size_t i = 0; i < val_.size(); ++i) {
    put_f(out, val_[i]);
    put_f(out, d1_[i]);
    put_f(out, d2_[i]);
  }
  put_u(out, crc_of(out, out.size()), 4);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write kernel file " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

OmegaKernel OmegaKernel::load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open kernel file " + path.string());
  const std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (buf.size() < sizeof kMagic + 4 || std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0) {
    throw std::runtime_error("not a kernel file: " + path.string());
  }
  Reader r{buf, sizeof kMagic};
  if (r.u(4) != kVersion) throw std::runtime_error("unsupported kernel file version");
  OmegaKernel k;
  k.j_ = static_cast<int>(r.u(4));
  k.c_ = r.f();
  k.T_ = r.f();
  k.h_ = r.f();
  k.u0_ = r.f();
  k.hu_ = r.f();
  k.cut_ = r.f();
  const std::uint64_t n = r.u(8);
  if (k.j_ < 1 || k.j_ > 3 || n < 2 || n > (buf.size() / 24)) throw std::runtime_error("corrupt kernel file header");
  k.val_.resize(n);
  k.d1_.resize(n);
  k.d2_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    k.val_[i] = r.f();
    k.d1_[i] = r.f();
    k.d2_[i] = r.f();
  }
  const std::size_t body = r.pos;
  if (static_cast<std::uint32_t>(r.u(4)) != crc_of(buf, body) || r.pos != buf.size()) {
    throw std::runtime_error("kernel file checksum mismatch: " + path.string());
  }
  k.build_nodes();
  return k;
}

}  // namespace qlf
