#include "nonmark/params.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nonmark/error.hpp"

namespace nonmark {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InputError(std::string(name) + " must be finite");
    }
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

constexpr std::array<std::string_view, 6> kParamKeys{"omega_A", "omega_L", "Omega",
                                                     "alpha",   "lambda",  "omega_0"};

} // namespace

DriveParams DriveParams::make(double omega_A, double omega_L, double Omega) {
    require_finite(omega_A, "omega_A");
    require_finite(omega_L, "omega_L");
    require_finite(Omega, "Omega");
    if (Omega < 0.0) {
        throw InputError("Omega (Rabi frequency) must be >= 0");
    }
    return DriveParams{omega_A, omega_L, Omega};
}

double DriveParams::dressed_splitting() const noexcept { return std::hypot(detuning(), Omega); }

ReservoirParams ReservoirParams::make(double alpha, double lambda_width, double omega_0) {
    require_finite(alpha, "alpha");
    require_finite(lambda_width, "lambda");
    require_finite(omega_0, "omega_0");
    if (!(alpha > 0.0)) {
        throw InputError("alpha must be > 0");
    }
    if (!(lambda_width > 0.0)) {
        throw InputError("lambda (Lorentzian width) must be > 0");
    }
    return ReservoirParams{alpha, lambda_width, omega_0};
}

Coefficients Coefficients::from_drive(double detuning, double Omega) {
    const double omega = std::hypot(detuning, Omega);
    if (!(omega > 0.0)) {
        throw InputError("degenerate drive: Delta = Omega = 0 leaves the dressed basis undefined");
    }
    return Coefficients{(detuning + omega) / (2.0 * omega), (detuning - omega) / (2.0 * omega),
                        Omega / (2.0 * omega)};
}

Derived derive(const DriveParams& drive, const ReservoirParams& reservoir) {
    const double omega = drive.dressed_splitting();
    Derived d;
    d.coeffs = Coefficients::from_drive(drive.detuning(), drive.Omega);
    d.regime.s = (reservoir.omega_0 - drive.omega_L) / reservoir.lambda_width;
    d.regime.p = omega / reservoir.lambda_width;
    return d;
}

Regime classify_regime(double p, const RegimeThresholds& thresholds) {
    if (p < 0.0) {
        throw InputError("p must be >= 0");
    }
    if (p <= thresholds.p_lo) {
        return Regime::Nonsecular;
    }
    if (p >= thresholds.p_hi) {
        return Regime::Secular;
    }
    return Regime::Intermediate;
}

std::string_view to_string(Regime regime) {
    switch (regime) {
    case Regime::Nonsecular: return "nonsecular";
    case Regime::Intermediate: return "intermediate";
    case Regime::Secular: return "secular";
    }
    return "unknown";
}

ModelParams ModelParams::make(const DriveParams& drive, const ReservoirParams& reservoir) {
    const Derived d = derive(drive, reservoir);
    return ModelParams{drive, reservoir, d.regime, d.coeffs};
}

ModelParams ModelParams::dimensionless(double s, double p, double alpha, double detuning,
                                       double Omega) {
    require_finite(s, "s");
    require_finite(p, "p");
    if (p < 0.0) {
        throw InputError("p must be >= 0");
    }
    ModelParams m;
    m.reservoir = ReservoirParams::make(alpha, 1.0, 0.0);
    m.regime = RegimeParams{s, p};
    m.coeffs = Coefficients::from_drive(detuning, Omega);
    return m;
}

std::vector<std::string> validity_warnings(const DriveParams& drive, double ratio) {
    std::vector<std::string> out;
    const double scale = std::abs(drive.omega_A);
    if (drive.Omega > ratio * scale) {
        std::ostringstream os;
        os << "Omega = " << drive.Omega << " is not small compared to omega_A = " << drive.omega_A;
        out.push_back(os.str());
    }
    if (std::abs(drive.detuning()) > ratio * scale) {
        std::ostringstream os;
        os << "|Delta| = " << std::abs(drive.detuning())
           << " is not small compared to omega_A = " << drive.omega_A;
        out.push_back(os.str());
    }
    return out;
}

ParamMap parse_param_text(std::string_view text) {
    ParamMap out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string value_text(trim(line.substr(eq + 1)));

        bool known = false;
        for (auto k : kParamKeys) {
            known = known || k == key;
        }
        if (!known) {
            throw InputError("config line " + std::to_string(line_no) + ": unknown key '" +
                             std::string(key) + "'");
        }
        if (out.contains(key)) {
            throw InputError("config line " + std::to_string(line_no) + ": duplicate key '" +
                             std::string(key) + "'");
        }
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(value_text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value_text.size() || !std::isfinite(value)) {
            throw InputError("config line " + std::to_string(line_no) + ": bad number '" +
                             value_text + "'");
        }
        out.emplace(std::string(key), value);
    }
    return out;
}

ParamMap load_param_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_param_text(buf.str());
}

} // namespace nonmark
