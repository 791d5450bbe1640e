#include "etoff/serialization.hpp"

#include <fstream>
#include <sstream>

namespace etoff {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

void require_dim(const Json& j, const char* key, Index actual, const char* what) {
  if (j.contains(key) && j.at(key).get<Index>() != actual) {
    std::ostringstream os;
    os << what << ": declared " << key << " = " << j.at(key).get<Index>() << " but data has "
       << actual;
    throw DimensionMismatch(os.str());
  }
}

KrausSet kraus_from_json(const Json& j) {
  KrausSet out;
  for (const auto& k : j) out.push_back(matrix_from_json(k));
  return out;
}

Json kraus_to_json(const KrausSet& kraus) {
  Json out = Json::array();
  for (const auto& k : kraus) out.push_back(matrix_to_json(k));
  return out;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
      throw ValidationError("matrix: expected a non-empty array of rows");
    }
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j.front().size());
    ComplexMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      const Json& row = j.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
        throw ValidationError("matrix: ragged rows");
      }
      for (Index c = 0; c < cols; ++c) {
        const Json& entry = row.at(static_cast<std::size_t>(c));
        if (entry.is_number()) {
          m(r, c) = Complex(entry.get<double>(), 0.0);
        } else if (entry.is_array() && entry.size() == 2) {
          m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        } else {
          throw ValidationError("matrix: entries must be [re, im] pairs");
        }
      }
    }
    require_finite(m, "matrix");
    return m;
  });
}

Json to_json(const ProjectiveObservable& obs) {
  Json branches = Json::array();
  for (const auto& b : obs.branches()) {
    branches.push_back({{"label", b.label}, {"projector", matrix_to_json(b.projector)}});
  }
  return {{"dim", obs.dim()}, {"branches", std::move(branches)}};
}

ProjectiveObservable observable_from_json(const Json& j) {
  return guarded("observable", [&] {
    if (j.contains("matrix")) {
      return spectral_decompose(HermitianMatrix(matrix_from_json(j.at("matrix"))));
    }
    std::vector<double> labels;
    std::vector<ComplexMatrix> projectors;
    for (const auto& b : j.at("branches")) {
      labels.push_back(b.at("label").get<double>());
      projectors.push_back(matrix_from_json(b.at("projector")));
    }
    ProjectiveObservable obs(std::move(labels), std::move(projectors));
    require_dim(j, "dim", obs.dim(), "observable");
    return obs;
  });
}

Json to_json(const Povm& povm) {
  return {{"dim", povm.dim()}, {"elements", kraus_to_json(povm.elements())}};
}

Povm povm_from_json(const Json& j) {
  return guarded("povm", [&] {
    Povm povm(kraus_from_json(j.at("elements")));
    require_dim(j, "dim", povm.dim(), "povm");
    return povm;
  });
}

Json to_json(const Channel& channel) {
  return {{"dim_in", channel.dim_in()},
          {"dim_out", channel.dim_out()},
          {"kraus", kraus_to_json(channel.kraus())}};
}

Channel channel_from_json(const Json& j) {
  return guarded("channel", [&] {
    Channel ch(kraus_from_json(j.at("kraus")));
    require_dim(j, "dim_in", ch.dim_in(), "channel");
    require_dim(j, "dim_out", ch.dim_out(), "channel");
    return ch;
  });
}

Json to_json(const QuantumInstrument& inst) {
  Json branches = Json::array();
  for (const auto& b : inst.branches()) {
    branches.push_back({{"label", b.label}, {"kraus", kraus_to_json(b.kraus)}});
  }
  return {{"dim_in", inst.dim_in()}, {"dim_out", inst.dim_out()}, {"branches", std::move(branches)}};
}

QuantumInstrument instrument_from_json(const Json& j) {
  return guarded("instrument", [&] {
    std::vector<InstrumentBranch> branches;
    for (const auto& b : j.at("branches")) {
      const Json& label = b.at("label");
      branches.push_back({label.is_string() ? label.get<std::string>() : label.dump(),
                          kraus_from_json(b.at("kraus"))});
    }
    QuantumInstrument inst(std::move(branches));
    require_dim(j, "dim_in", inst.dim_in(), "instrument");
    require_dim(j, "dim_out", inst.dim_out(), "instrument");
    return inst;
  });
}

Json to_json(const TradeoffInstance& instance) {
  return {{"X", to_json(instance.x)}, {"Z", to_json(instance.z)}, {"M", to_json(instance.m)}};
}

TradeoffInstance instance_from_json(const Json& j) {
  return guarded("instance", [&] {
    if (!j.is_object()) throw ValidationError("instance: expected an object with X, Z and M");
    TradeoffInstance inst{observable_from_json(j.at("X")), observable_from_json(j.at("Z")),
                          instrument_from_json(j.at("M"))};
    if (inst.x.dim() != inst.z.dim() || inst.x.dim() != inst.m.dim_in()) {
      throw DimensionMismatch("instance: X, Z and the instrument input must share a dimension");
    }
    return inst;
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace etoff
