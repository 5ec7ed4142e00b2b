#include "gwp1/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gwp1 {

namespace {

using ojson = nlohmann::ordered_json;

// Arrays one element per line; everything else compact.
std::string dump_lines(const ojson& arr) {
    std::string out = "[";
    for (std::size_t i = 0; i < arr.size(); ++i) out += (i ? ",\n " : "\n ") + arr[i].dump();
    return out + (arr.empty() ? "]" : "\n]");
}

std::string dump(const ojson& j) { return (j.is_array() ? dump_lines(j) : j.dump()) + "\n"; }

}  // namespace

std::string tensor_to_json(int g, const XiTensor& t) {
    ojson entries = ojson::array();
    for (const auto& [idx, v] : t.entries()) {
        ojson ix = ojson::array();
        for (const auto& i : idx) ix.push_back({i.k, i.alpha});
        entries.push_back({{"idx", ix}, {"val", to_string(v)}});
    }
    return "{\"g\":" + std::to_string(g) + ",\"n\":" + std::to_string(t.n()) + ",\"entries\":" + dump_lines(entries) +
           "}\n";
}

std::string tensor_to_csv(int, const XiTensor& t) {
    std::ostringstream os;
    for (int i = 1; i <= t.n(); ++i) os << 'k' << i << ",a" << i << ',';
    os << "value\n";
    for (const auto& [idx, v] : t.entries()) {
        for (const auto& i : idx) os << i.k << ',' << i.alpha << ',';
        os << to_string(v) << "\n";
    }
    return os.str();
}

StoredCorrelator tensor_from_json(const std::string& text) {
    auto j = ojson::parse(text);
    StoredCorrelator out;
    out.g = j.at("g").get<int>();
    out.n = j.at("n").get<int>();
    if (!is_stable(out.g, out.n)) throw DomainError("stored correlator has unstable (g,n)");
    out.tensor = XiTensor(out.n, max_k(out.g, out.n));
    for (const auto& e : j.at("entries")) {
        std::vector<XiIndex> idx;
        for (const auto& p : e.at("idx")) idx.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
        if (static_cast<int>(idx.size()) != out.n) throw DomainError("stored entry has wrong arity");
        out.tensor.set(idx, parse_rational(e.at("val").get<std::string>()));
    }
    return out;
}

std::string smatrix_to_json(int k_max) {
    ojson j = ojson::array();
    for (int k = 0; k <= k_max; ++k) {
        const SBlock& s = smatrix(k);
        ojson m = ojson::array();
        for (int a = 0; a < 2; ++a) m.push_back({to_string(s[a][0]), to_string(s[a][1])});
        j.push_back({{"k", k}, {"S", m}});
    }
    return dump(j);
}

std::string smatrix_to_csv(int k_max) {
    std::ostringstream os;
    os << "k,S00,S01,S10,S11\n";
    for (int k = 0; k <= k_max; ++k) {
        const SBlock& s = smatrix(k);
        os << k << ',' << to_string(s[0][0]) << ',' << to_string(s[0][1]) << ',' << to_string(s[1][0]) << ','
           << to_string(s[1][1]) << "\n";
    }
    return os.str();
}

std::string virasoro_report_json(const std::vector<VirasoroCheck>& checks) {
    ojson j = ojson::array();
    for (const auto& c : checks) {
        ojson ins = ojson::array();
        for (const auto& i : c.insertions) ins.push_back({i.b, i.alpha});
        j.push_back({{"L", c.k},
                     {"g", c.g},
                     {"insertions", ins},
                     {"lhs", to_string(c.lhs)},
                     {"rhs", to_string(c.rhs)},
                     {"pass", c.pass}});
    }
    return dump(j);
}

std::string virasoro_report_csv(const std::vector<VirasoroCheck>& checks) {
    std::ostringstream os;
    os << "L,g,insertions,lhs,rhs,pass\n";
    for (const auto& c : checks) {
        os << c.k << ',' << c.g << ",\"";
        for (std::size_t i = 0; i < c.insertions.size(); ++i)
            os << (i ? " " : "") << c.insertions[i].b << ':' << c.insertions[i].alpha;
        os << "\"," << to_string(c.lhs) << ',' << to_string(c.rhs) << ',' << (c.pass ? "true" : "false") << "\n";
    }
    return os.str();
}

std::string CorrelatorCache::path(int g, int n, const RecursionBudget& budget) const {
    std::ostringstream os;
    os << "omega_g" << g << "_n" << n << "_chi" << budget.chi_max << "_v" << kEngineVersion << ".json";
    return (std::filesystem::path(dir_) / os.str()).string();
}

bool CorrelatorCache::load(Engine& e, int g, int n) const {
    std::ifstream in(path(g, n, e.budget()));
    if (!in) return false;
    std::stringstream ss;
    ss << in.rdbuf();
    StoredCorrelator s = tensor_from_json(ss.str());
    if (s.g != g || s.n != n) return false;
    e.inject(g, n, std::move(s.tensor));
    return true;
}

void CorrelatorCache::save(Engine& e, int g, int n) const {
    std::filesystem::create_directories(dir_);
    const std::string p = path(g, n, e.budget());
    const std::string tmp = p + ".tmp";
    {
        std::ofstream out(tmp);
        out << tensor_to_json(g, *e.correlator(g, n));
        if (!out) throw std::runtime_error("cannot write cache file " + tmp);
    }
    std::filesystem::rename(tmp, p);
}

}  // namespace gwp1
