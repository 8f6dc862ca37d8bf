#include "nsfl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nsfl/error.hpp"

namespace nsfl {

FamilyKind parse_family(const std::string& s) {
  if (s == "stationary") return FamilyKind::stationary;
  if (s == "traveling") return FamilyKind::traveling;
  throw InvalidParameter("unknown family '" + s + "' (stationary|traveling)");
}

WallBc parse_bc(const std::string& s) {
  if (s == "slip") return WallBc::slip;
  if (s == "noslip" || s == "no_slip") return WallBc::no_slip;
  throw InvalidParameter("unknown boundary condition '" + s + "' (slip|noslip)");
}

Limiter parse_limiter(const std::string& s) {
  if (s == "minmod") return Limiter::minmod;
  if (s == "mc") return Limiter::mc;
  if (s == "none") return Limiter::none;
  throw InvalidParameter("unknown limiter '" + s + "' (minmod|mc|none)");
}

RiemannFlux parse_flux(const std::string& s) {
  if (s == "hllc") return RiemannFlux::hllc;
  if (s == "rusanov") return RiemannFlux::rusanov;
  throw InvalidParameter("unknown flux '" + s + "' (hllc|rusanov)");
}

namespace {

const char* limiter_name(Limiter l) {
  switch (l) {
    case Limiter::minmod: return "minmod";
    case Limiter::mc: return "mc";
    case Limiter::none: return "none";
  }
  return "minmod";
}

}  // namespace

std::string config_to_json(const ExperimentConfig& c) {
  nlohmann::json j = {
      {"gamma", c.gamma},
      {"z_safety", c.z_safety},
      {"alpha", c.alpha},
      {"bulk_coeff", c.bulk_coeff},
      {"family", to_string(c.family)},
      {"p0", c.p0},
      {"amplitude", c.amplitude},
      {"speed", c.speed},
      {"mu0", c.mu0},
      {"levels", c.levels},
      {"sigma_power", c.schedule.sigma_power},
      {"delta_power", c.schedule.delta_power},
      {"delta_scale", c.schedule.delta_scale},
      {"nx", c.nx},
      {"ny", c.ny},
      {"bc", to_string(c.bc)},
      {"t_final", c.t_final},
      {"cfl", c.cfl},
      {"limiter", limiter_name(c.limiter)},
      {"flux", c.flux == RiemannFlux::hllc ? "hllc" : "rusanov"},
      {"time_samples", c.time_samples},
      {"gap", c.gap},
      {"two_grid", c.two_grid},
      {"fine_check", c.fine_check},
      {"epsilon", c.epsilon},
      {"entropy_tol_constant", c.entropy_tol_constant},
      {"perturbation", c.perturbation},
      {"deterministic", c.deterministic},
      {"out_dir", c.out_dir},
      {"write_snapshots", c.write_snapshots},
  };
  if (c.z_threshold) j["z_threshold"] = *c.z_threshold;
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text, ExperimentConfig c) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParameter(std::string("config is not valid json: ") + e.what());
  }
  if (!j.is_object()) throw InvalidParameter("config must be a json object");

  try {
    std::set<std::string> seen;
    auto get = [&](const char* key, auto& field) {
      if (auto it = j.find(key); it != j.end()) {
        it->get_to(field);
        seen.insert(key);
      }
    };
    auto get_enum = [&](const char* key, auto& field, auto parse) {
      if (auto it = j.find(key); it != j.end()) {
        field = parse(it->template get<std::string>());
        seen.insert(key);
      }
    };
    get("gamma", c.gamma);
    if (auto it = j.find("z_threshold"); it != j.end()) {
      if (it->is_null()) c.z_threshold.reset();
      else c.z_threshold = it->get<double>();
      seen.insert("z_threshold");
    }
    get("z_safety", c.z_safety);
    get("alpha", c.alpha);
    get("bulk_coeff", c.bulk_coeff);
    get_enum("family", c.family, parse_family);
    get("p0", c.p0);
    get("amplitude", c.amplitude);
    get("speed", c.speed);
    get("mu0", c.mu0);
    get("levels", c.levels);
    get("sigma_power", c.schedule.sigma_power);
    get("delta_power", c.schedule.delta_power);
    get("delta_scale", c.schedule.delta_scale);
    get("nx", c.nx);
    get("ny", c.ny);
    get_enum("bc", c.bc, parse_bc);
    get("t_final", c.t_final);
    get("cfl", c.cfl);
    get_enum("limiter", c.limiter, parse_limiter);
    get_enum("flux", c.flux, parse_flux);
    get("time_samples", c.time_samples);
    get("gap", c.gap);
    get("two_grid", c.two_grid);
    get("fine_check", c.fine_check);
    get("epsilon", c.epsilon);
    get("entropy_tol_constant", c.entropy_tol_constant);
    get("perturbation", c.perturbation);
    get("deterministic", c.deterministic);
    get("out_dir", c.out_dir);
    get("write_snapshots", c.write_snapshots);
    for (const auto& [key, value] : j.items())
      if (!seen.count(key)) throw InvalidParameter("unknown config key '" + key + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("bad config value: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return config_from_json(ss.str(), std::move(base));
}

}  // namespace nsfl
