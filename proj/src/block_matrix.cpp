#include "mggm/block_matrix.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace mggm {

namespace {

constexpr char kMagic[4] = {'M', 'A', 'G', 'M'};

void write_u32_le(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32_le(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_f64_le(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFF);
  os.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64_le(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void BlockMatrix::save_csv(const std::filesystem::path& path) const {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os << "rows,cols,p,m\n";
  os << data_.rows() << "," << data_.cols() << "," << p_ << "," << m_ << "\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < data_.rows(); ++i) {
    for (Eigen::Index j = 0; j < data_.cols(); ++j) {
      if (j) os << ",";
      os << data_(i, j);
    }
    os << "\n";
  }
  if (!os) throw DataError("write failed: " + path.string());
}

BlockMatrix BlockMatrix::load_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line.rfind("rows,cols,p,m", 0) != 0)
    throw DataError(path.string() + ": missing rows,cols,p,m header");
  if (!std::getline(is, line)) throw DataError(path.string() + ": missing dimension line");
  long rows = 0, cols = 0, p = 0, m = 0;
  {
    std::istringstream ss(line);
    char c;
    if (!(ss >> rows >> c >> cols >> c >> p >> c >> m))
      throw DataError(path.string() + ": bad dimension line '" + line + "'");
  }
  if (rows != cols || p <= 0 || m <= 0 || rows != p * m)
    throw DataError(path.string() + ": inconsistent dimensions");
  Eigen::MatrixXd data(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!std::getline(is, line)) throw DataError(path.string() + ": truncated data");
    std::istringstream ss(line);
    std::string tok;
    for (long j = 0; j < cols; ++j) {
      if (!std::getline(ss, tok, ',')) throw DataError(path.string() + ": short row");
      data(i, j) = std::stod(tok);
    }
  }
  return BlockMatrix(std::move(data), static_cast<int>(p), static_cast<int>(m));
}

void BlockMatrix::save_binary(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os.write(kMagic, 4);
  write_u32_le(os, static_cast<std::uint32_t>(data_.rows()));
  write_u32_le(os, static_cast<std::uint32_t>(data_.cols()));
  write_u32_le(os, static_cast<std::uint32_t>(p_));
  write_u32_le(os, static_cast<std::uint32_t>(m_));
  for (Eigen::Index i = 0; i < data_.rows(); ++i)
    for (Eigen::Index j = 0; j < data_.cols(); ++j) write_f64_le(os, data_(i, j));
  if (!os) throw DataError("write failed: " + path.string());
}

BlockMatrix BlockMatrix::load_binary(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError(path.string() + ": not a MAGM matrix file");
  const auto rows = read_u32_le(is), cols = read_u32_le(is);
  const auto p = read_u32_le(is), m = read_u32_le(is);
  if (rows != cols || p == 0 || m == 0 || rows != p * m)
    throw DataError(path.string() + ": inconsistent dimensions");
  Eigen::MatrixXd data(rows, cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) data(i, j) = read_f64_le(is);
  if (!is) throw DataError(path.string() + ": truncated data");
  return BlockMatrix(std::move(data), static_cast<int>(p), static_cast<int>(m));
}

}  // namespace mggm
