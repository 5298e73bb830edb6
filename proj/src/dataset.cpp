#include "tbw/dataset.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace tbw {

AircraftDataset chaka50_dataset() {
    AircraftDataset d;
    d.name = "Chaka 50 MRJ";
    d.S = 43.42;
    d.cbar = 1.216;
    d.b = 28.0;
    d.mass = 18418.27;
    d.Ixx = 378056.535;
    d.Iyy = 4914073.496;
    d.Izz = 5670084.803;
    d.Ixz = 0.0;
    d.rho = 1.225;
    d.V_ref = 160.0;

    d.cruise.phase = "cruise";
    d.cruise.cD0 = 0.0338;
    d.cruise.cL0 = 0.3180;
    d.cruise.cm0 = -0.06;
    d.cruise.cDa = 0.8930;
    d.cruise.cLa = 14.88;
    d.cruise.cma = -11.84;
    d.cruise.cDu = 0.041;
    d.cruise.cLu = 0.081;
    d.cruise.cmu = -0.039;
    d.cruise.cDq = 0.0;
    d.cruise.cLq = 12.53;
    d.cruise.cmq = -40.69;
    d.cruise.cDde = 0.1570;
    d.cruise.cLde = 0.78;
    d.cruise.cmde = -5.98;

    d.takeoff.phase = "takeoff";
    d.takeoff.cD0 = 0.0378;
    d.takeoff.cL0 = 0.3203;
    d.takeoff.cm0 = -0.07;
    d.takeoff.cDa = 0.95;
    d.takeoff.cLa = 11.06;
    d.takeoff.cma = -12.18;
    d.takeoff.cDu = 0.040;
    d.takeoff.cLu = 0.0;
    d.takeoff.cmu = 0.0;
    d.takeoff.cDq = 0.0;
    d.takeoff.cLq = 11.31;
    d.takeoff.cmq = -40.25;
    d.takeoff.cDde = 0.1550;
    d.takeoff.cLde = 0.96;
    d.takeoff.cmde = -6.15;

    d.ref.trim_thrust_lbf = 21433.02;
    d.ref.trim_alpha_deg = 0.39;
    d.ref.trim_deltaE_deg = -2.28;
    d.ref.sp_re = -0.8;
    d.ref.sp_im = 0.61;
    d.ref.ph_re = -0.0064;
    d.ref.ph_im = 0.05;
    return d;
}

namespace {

const std::vector<std::string> kDerivNames = {
    "cD0", "cL0", "cm0", "cDa", "cLa", "cma", "cDu", "cLu",
    "cmu", "cDq", "cLq", "cmq", "cDde", "cLde", "cmde"};

double& deriv_field(DerivativeSet& d, const std::string& name) {
    static const std::map<std::string, double DerivativeSet::*> fields = {
        {"cD0", &DerivativeSet::cD0},   {"cL0", &DerivativeSet::cL0},
        {"cm0", &DerivativeSet::cm0},   {"cDa", &DerivativeSet::cDa},
        {"cLa", &DerivativeSet::cLa},   {"cma", &DerivativeSet::cma},
        {"cDu", &DerivativeSet::cDu},   {"cLu", &DerivativeSet::cLu},
        {"cmu", &DerivativeSet::cmu},   {"cDq", &DerivativeSet::cDq},
        {"cLq", &DerivativeSet::cLq},   {"cmq", &DerivativeSet::cmq},
        {"cDde", &DerivativeSet::cDde}, {"cLde", &DerivativeSet::cLde},
        {"cmde", &DerivativeSet::cmde}};
    return d.*fields.at(name);
}

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

AircraftDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingArtifact("dataset file not found: " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw NumericalError("dataset parse error in " + path + ": '" + line + "'");
        }
        kv[trimmed(line.substr(0, eq))] = trimmed(line.substr(eq + 1));
    }

    const auto num = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            throw NumericalError("dataset " + path + " is missing required key '" + key + "'");
        }
        return std::stod(it->second);
    };

    AircraftDataset d;
    d.name = kv.count("name") ? kv.at("name") : path;
    d.S = num("S_m2");
    d.cbar = num("cbar_m");
    d.b = num("b_m");
    d.mass = num("mass_kg");
    d.Ixx = num("Ixx_kgm2");
    d.Iyy = num("Iyy_kgm2");
    d.Izz = num("Izz_kgm2");
    d.Ixz = num("Ixz_kgm2");
    d.rho = num("rho_kgm3");
    d.V_ref = num("V_ref_mps");

    d.cruise.phase = "cruise";
    d.takeoff.phase = "takeoff";
    for (const auto& n : kDerivNames) {
        deriv_field(d.cruise, n) = num("cruise." + n);
        deriv_field(d.takeoff, n) = num("takeoff." + n);
    }

    d.ref.trim_thrust_lbf = num("ref.trim_thrust_lbf");
    d.ref.trim_alpha_deg = num("ref.trim_alpha_deg");
    d.ref.trim_deltaE_deg = num("ref.trim_deltaE_deg");
    d.ref.sp_re = num("ref.sp_re");
    d.ref.sp_im = num("ref.sp_im");
    d.ref.ph_re = num("ref.ph_re");
    d.ref.ph_im = num("ref.ph_im");

    if (!(d.S > 0 && d.cbar > 0 && d.b > 0 && d.mass > 0 && d.Iyy > 0)) {
        throw NumericalError("dataset " + path + ": geometry/mass must be positive");
    }
    if (d.Ixz != 0.0) {
        throw NumericalError("dataset " + path +
                             ": Ixz must be 0 (the rotational dynamics assume diagonal inertia)");
    }
    for (const DerivativeSet* ds : {&d.cruise, &d.takeoff}) {
        if (!(ds->cma < 0 && ds->cmq < 0)) {
            throw NumericalError("dataset " + path + ": " + ds->phase +
                                 " phase must be statically stable (cma < 0, cmq < 0)");
        }
    }
    return d;
}

std::uint64_t dataset_checksum(const AircraftDataset& d) {
    std::ostringstream os;
    os.precision(17);
    os << d.name << d.S << d.cbar << d.b << d.mass << d.Ixx << d.Iyy << d.Izz << d.Ixz << d.rho
       << d.V_ref;
    for (const DerivativeSet* ds : {&d.cruise, &d.takeoff}) {
        os << ds->cD0 << ds->cL0 << ds->cm0 << ds->cDa << ds->cLa << ds->cma << ds->cDu << ds->cLu
           << ds->cmu << ds->cDq << ds->cLq << ds->cmq << ds->cDde << ds->cLde << ds->cmde;
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : os.str()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

AircraftModel make_model(const AircraftDataset& d, const std::string& phase) {
    AircraftModel m;
    m.S = d.S;
    m.cbar = d.cbar;
    m.b = d.b;
    m.mass = d.mass;
    m.Ixx = d.Ixx;
    m.Iyy = d.Iyy;
    m.Izz = d.Izz;
    m.Ixz = d.Ixz;
    m.rho = d.rho;
    m.V_ref = d.V_ref;
    if (phase == "cruise") {
        m.derivs = d.cruise;
    } else if (phase == "takeoff") {
        m.derivs = d.takeoff;
    } else {
        throw NumericalError("unknown flight phase '" + phase + "' (expected cruise or takeoff)");
    }
    return m;
}

} // namespace tbw
