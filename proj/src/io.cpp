#include "spdmeans/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spdmeans/seeding.hpp"

namespace spdmeans {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw InvalidParameter("matrix document must carry 'dim' and 'entries'");
  }
  const auto dim = j.at("dim").get<Index>();
  if (dim < 1) {
    throw InvalidParameter("matrix document: dim must be >= 1");
  }
  const nlohmann::json& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Index>(entries.size()) != dim) {
    throw InvalidParameter("matrix document: entries must hold dim rows");
  }
  Matrix m(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const nlohmann::json& row = entries.at(i);
    if (!row.is_array() || static_cast<Index>(row.size()) != dim) {
      throw InvalidParameter("matrix document: row " + std::to_string(i) +
                             " must hold dim entries");
    }
    for (Index k = 0; k < dim; ++k) {
      const nlohmann::json& cell = row.at(k);
      if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
          !cell.at(1).is_number()) {
        throw InvalidParameter("matrix document: entries must be [re, im] pairs");
      }
      m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

HermitianMatrix hermitian_from_json(const nlohmann::json& j) {
  Matrix m = matrix_from_json(j);
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-12) {
    throw InvalidParameter("matrix document is not Hermitian: max entry defect " +
                           std::to_string(defect));
  }
  return HermitianMatrix(m);
}

SpdMatrix spd_from_json(const nlohmann::json& j) { return SpdMatrix(hermitian_from_json(j)); }

namespace {

nlohmann::json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidParameter("cannot open file: " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter("cannot parse " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace

HermitianMatrix load_hermitian(const std::filesystem::path& path) {
  return hermitian_from_json(parse_file(path));
}

SpdMatrix load_spd(const std::filesystem::path& path) { return spd_from_json(parse_file(path)); }

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidParameter("cannot write file: " + path.string());
  }
  out << matrix_to_json(m).dump(2) << '\n';
}

std::uint64_t digest(const nlohmann::json& j) { return fnv1a64(j.dump()); }

std::string format_scalar(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

nlohmann::json RunReport::to_json() const {
  return nlohmann::json{{"command", command},
                        {"inputs_digest", inputs_digest},
                        {"outputs", outputs},
                        {"verdicts", verdicts},
                        {"wall_seconds", wall_seconds}};
}

namespace {

void print_scalars(std::ostream& os, const std::string& prefix, const nlohmann::json& j) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      print_scalars(os, prefix.empty() ? key : prefix + "." + key, value);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      print_scalars(os, prefix + "[" + std::to_string(i) + "]", j.at(i));
    }
  } else if (j.is_number_float()) {
    os << prefix << ": " << format_scalar(j.get<double>()) << '\n';
  } else {
    os << prefix << ": " << j.dump() << '\n';
  }
}

}  // namespace

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "command: " << command << '\n';
  os << "inputs_digest: " << inputs_digest << '\n';
  print_scalars(os, "outputs", outputs);
  print_scalars(os, "verdicts", verdicts);
  os << "wall_seconds: " << format_scalar(wall_seconds) << '\n';
  return os.str();
}

}  // namespace spdmeans
