#include "nldw/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nldw {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key + ": " + v);
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer value for " + key + ": " + v);
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(key, item));
    }
    return out;
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config: expected key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw std::invalid_argument("config: duplicate key " + key);

        if (key == "Z") cfg.Z = parse_double(key, val);
        else if (key == "M") cfg.M = parse_double(key, val);
        else if (key == "n") cfg.n = parse_int(key, val);
        else if (key == "h") cfg.h = parse_double(key, val);
        else if (key == "tol_grad") cfg.tol_grad = parse_double(key, val);
        else if (key == "tol_mass") cfg.tol_mass = parse_double(key, val);
        else if (key == "max_iters") cfg.max_iters = parse_int(key, val);
        else if (key == "tau0") cfg.tau0 = parse_double(key, val);
        else if (key == "escape_radius_fraction") cfg.escape_radius_fraction = parse_double(key, val);
        else if (key == "init") cfg.init = val;
        else if (key == "m_list") cfg.m_list = parse_list(key, val);
        else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_int(key, val));
        else if (key == "out_dir") cfg.out_dir = val;
        else throw std::invalid_argument("config: unknown key " + key);
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse(buf.str());
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "Z=" << Z << "\n"
       << "M=" << M << "\n"
       << "n=" << n << "\n"
       << "h=" << h << "\n"
       << "tol_grad=" << tol_grad << "\n"
       << "tol_mass=" << tol_mass << "\n"
       << "max_iters=" << max_iters << "\n"
       << "tau0=" << tau0 << "\n"
       << "escape_radius_fraction=" << escape_radius_fraction << "\n"
       << "init=" << init << "\n";
    os << "m_list=";
    for (std::size_t i = 0; i < m_list.size(); ++i) os << (i ? "," : "") << m_list[i];
    os << "\n";
    os << "seed=" << seed << "\n";
    os << "out_dir=" << out_dir << "\n";
    return os.str();
}

std::string RunConfig::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"Z\":" << Z << ",\"M\":" << M << ",\"n\":" << n << ",\"h\":" << h
       << ",\"tol_grad\":" << tol_grad << ",\"tol_mass\":" << tol_mass
       << ",\"max_iters\":" << max_iters << ",\"tau0\":" << tau0
       << ",\"escape_radius_fraction\":" << escape_radius_fraction << ",\"init\":\"" << init
       << "\",\"m_list\":[";
    for (std::size_t i = 0; i < m_list.size(); ++i) os << (i ? "," : "") << m_list[i];
    os << "],\"seed\":" << seed << ",\"out_dir\":\"" << out_dir << "\"}";
    return os.str();
}

ModelParams RunConfig::params() const {
    ModelParams p;
    p.Z = Z;
    p.M = M;
    p.grid = Grid3D(n, h);
    p.tol_grad = tol_grad;
    p.tol_mass = tol_mass;
    p.max_iters = max_iters;
    p.tau0 = tau0;
    p.escape_radius_fraction = escape_radius_fraction;
    p.validate();
    return p;
}

void RunConfig::validate() const {
    if (init != "gaussian" && init != "ball")
        throw std::invalid_argument("config: init must be gaussian or ball");
    for (std::size_t i = 0; i + 1 < m_list.size(); ++i)
        if (!(m_list[i] < m_list[i + 1]))
            throw std::invalid_argument("config: m_list must be strictly increasing");
    params();  // validates the numeric block
}

}  // namespace nldw
