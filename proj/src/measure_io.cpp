#include "uodual/measure_io.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace uodual {

nlohmann::json space_to_json(const ProbabilitySpace& space) {
  nlohmann::json j;
  j["points"] = space.points();
  j["weights"] = std::vector<double>(space.weights().data(), space.weights().data() + space.size());
  if (space.level())
    j["level"] = *space.level();
  else
    j["level"] = nullptr;
  return j;
}

SpacePtr space_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("level") && !j.at("level").is_null()) {
      auto space = ProbabilitySpace::dyadic(j.at("level").get<int>());
      if (j.contains("weights")) {
        const auto w = j.at("weights").get<std::vector<double>>();
        if (Eigen::Index(w.size()) != space->size())
          throw Error(Errc::InvalidArgument, "dyadic level and weight count disagree");
      }
      return space;
    }
    const auto w = j.at("weights").get<std::vector<double>>();
    auto points = j.contains("points") ? j.at("points").get<std::vector<std::string>>() : std::vector<std::string>{};
    if (points.empty())
      for (std::size_t i = 0; i < w.size(); ++i) points.push_back(std::to_string(i));
    return ProbabilitySpace::make(std::move(points), Eigen::Map<const Eigen::VectorXd>(w.data(), Eigen::Index(w.size())));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("bad space JSON: ") + e.what());
  }
}

void write_csv(std::ostream& out, const RandomVariable& f) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "index,weight,value\n";
  for (Eigen::Index i = 0; i < f.size(); ++i) out << i << ',' << f.space().weights()(i) << ',' << f[i] << '\n';
  out.precision(old);
}

RandomVariable read_csv(std::istream& in, SpacePtr space) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,weight,value", 0) != 0)
    throw Error(Errc::InvalidArgument, "missing CSV header index,weight,value");
  Eigen::VectorXd values(space->size());
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    long index = 0;
    double weight = 0, value = 0;
    char c1 = 0, c2 = 0;
    if (!(ss >> index >> c1 >> weight >> c2 >> value) || c1 != ',' || c2 != ',')
      throw Error(Errc::InvalidArgument, "malformed CSV row " + std::to_string(row));
    if (index != row || row >= space->size())
      throw Error(Errc::InvalidArgument, "CSV index out of order at row " + std::to_string(row));
    if (std::abs(weight - space->weights()(row)) > 1e-12)
      throw Error(Errc::IncompatibleSpaces, "CSV weight differs from the space at row " + std::to_string(row));
    values(row++) = value;
  }
  if (row != space->size()) throw Error(Errc::InvalidArgument, "CSV has fewer rows than the space has points");
  return RandomVariable(std::move(space), std::move(values));
}

}  // namespace uodual
