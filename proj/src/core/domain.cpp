#include "domain.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace minpart {

double FourierSeries::eval(double x) const {
    if (coef.empty()) return 0.0;
    double v = coef[0];
    const double w = 2.0 * std::numbers::pi * x;
    for (std::size_t k = 1; 2 * k - 1 < coef.size(); ++k) {
        v += coef[2 * k - 1] * std::cos(w * k);
        if (2 * k < coef.size()) v += coef[2 * k] * std::sin(w * k);
    }
    return v;
}

double FourierSeries::deriv(double x) const {
    double v = 0.0;
    const double w = 2.0 * std::numbers::pi * x;
    for (std::size_t k = 1; 2 * k - 1 < coef.size(); ++k) {
        const double f = 2.0 * std::numbers::pi * k;
        v -= f * coef[2 * k - 1] * std::sin(w * k);
        if (2 * k < coef.size()) v += f * coef[2 * k] * std::cos(w * k);
    }
    return v;
}

bool FourierSeries::is_constant() const {
    for (std::size_t i = 1; i < coef.size(); ++i) {
        if (coef[i] != 0.0) return false;
    }
    return true;
}

namespace {

void check_common(const Rational& b, int degree) {
    if (b <= Rational(0)) throw InvalidArgument("domain width must be positive");
    if (degree != 1 && degree != 2) throw InvalidArgument("covering degree must be 1 or 2");
}

} // namespace

DomainSpec DomainSpec::strip(const Rational& b, int degree, BcPair bc) {
    check_common(b, degree);
    DomainSpec d;
    d.kind = DomainKind::cylinder_strip;
    d.b_exact = b;
    d.b = b.to_double();
    d.degree = degree;
    d.bc = bc;
    return d;
}

DomainSpec DomainSpec::annulus(const Rational& b, int degree, BcPair bc,
                               FourierSeries h1, FourierSeries h2) {
    check_common(b, degree);
    DomainSpec d;
    d.kind = DomainKind::annulus;
    d.b_exact = b;
    d.b = b.to_double();
    d.degree = degree;
    d.bc = bc;
    d.h1 = std::move(h1);
    d.h2 = std::move(h2);
    return d;
}

DomainSpec DomainSpec::round_annulus(const Rational& b, int degree, BcPair bc) {
    return annulus(b, degree, bc, FourierSeries::constant(0.0), FourierSeries::constant(1.0));
}

std::string DomainSpec::describe() const {
    std::ostringstream os;
    if (kind == DomainKind::cylinder_strip) {
        os << "cylinder strip, b=" << b_exact.to_fraction_string() << " (" << b << ")";
    } else {
        os << "annulus, b=" << b_exact.to_fraction_string() << " (" << b << ")";
        if (h1.is_constant() && h2.is_constant()) {
            os << ", round r in (" << 1.0 + b * h1.coef[0] << ", " << 1.0 + b * h2.coef[0] << ")";
        } else {
            os << ", profiled";
        }
    }
    os << ", degree " << degree << ", bc " << to_string(bc.bottom) << "/" << to_string(bc.top);
    return os.str();
}

namespace {

std::vector<double> parse_coef_list(const std::string& value, const std::string& key) {
    std::istringstream is(value);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("config: bad number '" + tok + "' in " + key);
        }
    }
    if (out.empty()) throw ParseError("config: empty coefficient list for " + key);
    return out;
}

int parse_int_value(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("config: bad integer '" + value + "' for " + key);
    }
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

DomainConfig parse_config_text(const std::string& text) {
    std::string kind = "strip";
    Rational b(1, 5);
    bool have_b = false;
    int degree = 1;
    BcPair bc;
    FourierSeries h1 = FourierSeries::constant(0.0);
    FourierSeries h2 = FourierSeries::constant(1.0);
    int ntheta = 0, nt = 0;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError("config line " + std::to_string(lineno) + ": empty key or value");
        }
        if (key == "kind") {
            if (value != "strip" && value != "annulus") {
                throw ParseError("config: kind must be strip or annulus, got " + value);
            }
            kind = value;
        } else if (key == "b") {
            b = Rational::parse(value);
            have_b = true;
        } else if (key == "degree") {
            degree = parse_int_value(value, key);
        } else if (key == "ntheta") {
            ntheta = parse_int_value(value, key);
        } else if (key == "nt") {
            nt = parse_int_value(value, key);
        } else if (key == "bc_bottom") {
            bc.bottom = parse_bc(value);
        } else if (key == "bc_top") {
            bc.top = parse_bc(value);
        } else if (key == "h1") {
            h1.coef = parse_coef_list(value, key);
        } else if (key == "h2") {
            h2.coef = parse_coef_list(value, key);
        } else {
            throw ParseError("config: unknown key '" + key + "'");
        }
    }
    if (!have_b) throw ParseError("config: missing required key b");

    DomainConfig cfg;
    if (kind == "strip") {
        cfg.domain = DomainSpec::strip(b, degree, bc);
    } else {
        cfg.domain = DomainSpec::annulus(b, degree, bc, h1, h2);
    }
    cfg.ntheta = ntheta;
    cfg.nt = nt;
    return cfg;
}

DomainConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace minpart
