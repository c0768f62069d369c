#include "hypsum/value_table.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace hypsum {

static_assert(std::endian::native == std::endian::little,
              "table dump format is little-endian");

ValueTable::ValueTable(u64 n_max, TableKind kind) : n_max_(n_max), kind_(kind) {
  if (n_max < 1) throw UsageError("ValueTable: n_max must be >= 1");
  u64 bytes = (n_max + 1) * (kind == TableKind::integer_exact ? sizeof(i64) : sizeof(double));
  check_allocation(bytes, "ValueTable");
  if (kind == TableKind::integer_exact)
    ivals_.assign(n_max + 1, 0);
  else
    fvals_.assign(n_max + 1, 0.0);
}

namespace {
constexpr char kMagic[4] = {'H', 'S', 'V', 'T'};
constexpr u32 kFormatVersion = 1;

template <typename T>
void write_raw(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
void read_raw(std::istream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void ValueTable::dump(std::ostream& os) const {
  os.write(kMagic, 4);
  write_raw(os, kFormatVersion);
  write_raw(os, n_max_);
  write_raw(os, static_cast<std::uint8_t>(kind_));
  if (is_integer())
    os.write(reinterpret_cast<const char*>(ivals_.data() + 1),
             std::streamsize(n_max_ * sizeof(i64)));
  else
    os.write(reinterpret_cast<const char*>(fvals_.data() + 1),
             std::streamsize(n_max_ * sizeof(double)));
  if (!os) throw ResourceError("ValueTable dump: write failed");
}

ValueTable ValueTable::load(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw UsageError("ValueTable load: bad magic, not an HSVT file");
  u32 version;
  read_raw(is, version);
  if (version != kFormatVersion)
    throw UsageError("ValueTable load: unsupported format version " + std::to_string(version));
  u64 n_max;
  read_raw(is, n_max);
  std::uint8_t kind_byte;
  read_raw(is, kind_byte);
  if (kind_byte > 1) throw UsageError("ValueTable load: bad kind byte");
  ValueTable t(n_max, static_cast<TableKind>(kind_byte));
  if (t.is_integer())
    is.read(reinterpret_cast<char*>(t.ivals_.data() + 1), std::streamsize(n_max * sizeof(i64)));
  else
    is.read(reinterpret_cast<char*>(t.fvals_.data() + 1), std::streamsize(n_max * sizeof(double)));
  if (!is) throw UsageError("ValueTable load: truncated file");
  return t;
}

void ValueTable::dump_file(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ResourceError("cannot open for write: " + path);
  dump(os);
}

ValueTable ValueTable::load_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ResourceError("cannot open for read: " + path);
  return load(is);
}

}  // namespace hypsum
