#pragma once

#include <cstdint>
#include <string>

#include "tbw/types.hpp"

namespace tbw {

// Published reference values shipped with the dataset, used for side-by-side
// reports (not asserted against the solver: the dataset derivatives do not
// reproduce them, see the trim/modes reports).
struct ReferenceData {
    double trim_thrust_lbf = 0.0;
    double trim_alpha_deg = 0.0;
    double trim_deltaE_deg = 0.0;
    double sp_re = 0.0, sp_im = 0.0; // published short-period root
    double ph_re = 0.0, ph_im = 0.0; // published phugoid root
};

struct AircraftDataset {
    std::string name;
    double S = 0.0, cbar = 0.0, b = 0.0, mass = 0.0;
    double Ixx = 0.0, Iyy = 0.0, Izz = 0.0, Ixz = 0.0;
    double rho = 1.225;
    double V_ref = 160.0;
    DerivativeSet cruise;
    DerivativeSet takeoff;
    ReferenceData ref;
};

// Built-in Chaka 50 MRJ dataset (matches data/chaka50.dat).
AircraftDataset chaka50_dataset();

// Loads a key-value dataset file. Throws MissingArtifact if the file does not
// exist and NumericalError if any of the 15 derivatives per phase is missing.
AircraftDataset load_dataset(const std::string& path);

// FNV-1a of the serialized dataset, recorded in run manifests.
std::uint64_t dataset_checksum(const AircraftDataset& d);

AircraftModel make_model(const AircraftDataset& d, const std::string& phase);

} // namespace tbw
