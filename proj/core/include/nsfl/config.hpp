#pragma once

#include <filesystem>
#include <string>

#include "nsfl/experiment.hpp"

namespace nsfl {

std::string config_to_json(const ExperimentConfig& cfg);

/// Keys present in the JSON replace the corresponding fields of base; unknown
/// keys are rejected. Throws InvalidParameter.
ExperimentConfig config_from_json(const std::string& text, ExperimentConfig base = {});

/// Throws IoError when the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

FamilyKind parse_family(const std::string& s);
WallBc parse_bc(const std::string& s);
Limiter parse_limiter(const std::string& s);
RiemannFlux parse_flux(const std::string& s);

}  // namespace nsfl
