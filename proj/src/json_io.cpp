#include "dsa/json_io.hpp"

#include <fstream>

namespace dsa {

namespace {

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw Error("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

RatMatrix grid_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw Error("expected a non-empty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    RatMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols) throw Error("ragged matrix rows");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = rational_from_json(row.at(static_cast<std::size_t>(k)));
    }
    return m;
}

Json grid_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

char symbol_from_json(const Json& j) {
    const auto s = j.get<std::string>();
    if (s.size() != 1) throw Error("symbols must be single characters, got \"" + s + "\"");
    return s[0];
}

std::string alphabet_from_json(const Json& j) {
    std::string out;
    for (const auto& sym : j) out.push_back(symbol_from_json(sym));
    return out;
}

Json alphabet_to_json(const std::string& alphabet) {
    Json out = Json::array();
    for (char c : alphabet) out.push_back(std::string(1, c));
    return out;
}

int state_index(const std::vector<std::string>& states, const std::string& name) {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<int>(i);
    throw Error("unknown state \"" + name + "\"");
}

std::vector<bool> state_set_from_json(const Json& j, const std::vector<std::string>& states) {
    std::vector<bool> flags(states.size(), false);
    for (const auto& name : j) flags[static_cast<std::size_t>(state_index(states, name.get<std::string>()))] = true;
    return flags;
}

Json state_set_to_json(const std::vector<bool>& flags, const std::vector<std::string>& states) {
    Json out = Json::array();
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) out.push_back(states[i]);
    return out;
}

EndmarkerMode endmarkers_from_json(const Json& j) {
    const auto s = j.get<std::string>();
    if (s == "both") return EndmarkerMode::Both;
    if (s == "hash") return EndmarkerMode::HashOnly;
    if (s == "none") return EndmarkerMode::None;
    throw Error("endmarkers must be \"both\", \"hash\" or \"none\", got \"" + s + "\"");
}

// A transitions entry may be a full matrix object or a bare grid.
StochMatrix transition_matrix_from_json(const Json& j) {
    if (j.is_array()) return StochMatrix(grid_from_json(j));
    return matrix_from_json(j);
}

template <typename Automaton>
void core_from_json(const Json& j, Automaton& a) {
    for (const auto& name : j.at("states")) a.states.push_back(name.get<std::string>());
    a.alphabet = alphabet_from_json(j.at("alphabet"));
    a.initial = state_index(a.states, j.at("initial").get<std::string>());
    a.accepting = state_set_from_json(j.at("accepting"), a.states);
    a.endmarkers = j.contains("endmarkers") ? endmarkers_from_json(j.at("endmarkers"))
                                            : EndmarkerMode::Both;
    for (const auto& [sym, mat] : j.at("transitions").items()) {
        if (sym.size() != 1) throw Error("transition symbols must be single characters");
        a.transitions.emplace(sym[0], transition_matrix_from_json(mat));
    }
}

template <typename Automaton>
Json core_to_json(const Automaton& a, const char* type) {
    Json j;
    j["type"] = type;
    j["states"] = a.states;
    j["alphabet"] = alphabet_to_json(a.alphabet);
    j["initial"] = a.states.at(static_cast<std::size_t>(a.initial));
    j["accepting"] = state_set_to_json(a.accepting, a.states);
    j["endmarkers"] = to_string(a.endmarkers);
    Json trans = Json::object();
    for (const auto& [sym, mat] : a.transitions) trans[std::string(1, sym)] = matrix_to_json(mat);
    j["transitions"] = std::move(trans);
    return j;
}

}  // namespace

Json matrix_to_json(const StochMatrix& m) {
    Json j;
    j["n"] = m.order();
    j["entries"] = grid_to_json(m.entries());
    return j;
}

StochMatrix matrix_from_json(const Json& j) {
    RatMatrix m = grid_from_json(j.at("entries"));
    if (j.contains("n") && j.at("n").get<Eigen::Index>() != m.rows())
        throw Error("matrix \"n\" disagrees with the entry grid");
    return StochMatrix(std::move(m));
}

Json prac_to_json(const PraC& a) { return core_to_json(a, "prac"); }

PraC prac_from_json(const Json& j) {
    PraC a;
    core_from_json(j, a);
    return a;
}

Json pradh_to_json(const PraDh& a) {
    Json j = core_to_json(a, "pradh");
    j["rejecting"] = state_set_to_json(a.rejecting, a.states);
    return j;
}

PraDh pradh_from_json(const Json& j) {
    PraDh a;
    core_from_json(j, a);
    a.rejecting = state_set_from_json(j.at("rejecting"), a.states);
    return a;
}

Json pra15_to_json(const Pra15& a) {
    Json j;
    j["type"] = "pra15";
    j["states"] = a.states;
    j["alphabet"] = alphabet_to_json(a.alphabet);
    j["initial"] = a.states.at(static_cast<std::size_t>(a.initial));
    j["accepting"] = state_set_to_json(a.accepting, a.states);
    j["flavor"] = a.flavor == Pra15::Flavor::Weak ? "weak" : "strong";
    Json trans = Json::object();
    for (const auto& [sym, pair] : a.transitions) {
        Json dirs;
        dirs["0"] = grid_to_json(pair.stay);
        dirs["1"] = grid_to_json(pair.advance);
        trans[std::string(1, sym)] = std::move(dirs);
    }
    j["transitions"] = std::move(trans);
    return j;
}

Pra15 pra15_from_json(const Json& j) {
    Pra15 a;
    for (const auto& name : j.at("states")) a.states.push_back(name.get<std::string>());
    a.alphabet = alphabet_from_json(j.at("alphabet"));
    a.initial = state_index(a.states, j.at("initial").get<std::string>());
    a.accepting = state_set_from_json(j.at("accepting"), a.states);
    const auto flavor = j.at("flavor").get<std::string>();
    if (flavor == "weak")
        a.flavor = Pra15::Flavor::Weak;
    else if (flavor == "strong")
        a.flavor = Pra15::Flavor::Strong;
    else
        throw Error("flavor must be \"weak\" or \"strong\", got \"" + flavor + "\"");
    for (const auto& [sym, dirs] : j.at("transitions").items()) {
        if (sym.size() != 1) throw Error("transition symbols must be single characters");
        Pra15::DirPair pair;
        pair.stay = grid_from_json(dirs.at("0"));
        pair.advance = grid_from_json(dirs.at("1"));
        a.transitions.emplace(sym[0], std::move(pair));
    }
    return a;
}

AutomatonFile automaton_from_json(const Json& j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "prac") return prac_from_json(j);
    if (type == "pradh") return pradh_from_json(j);
    if (type == "pra15") return pra15_from_json(j);
    throw Error("unknown automaton type \"" + type + "\"");
}

Json automaton_to_json(const AutomatonFile& a) {
    return std::visit(
        [](const auto& value) -> Json {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, PraC>) return prac_to_json(value);
            else if constexpr (std::is_same_v<T, PraDh>) return pradh_to_json(value);
            else return pra15_to_json(value);
        },
        a);
}

Json dfa_to_json(const Dfa& d) {
    Json j;
    j["states"] = d.names;
    j["alphabet"] = alphabet_to_json(d.alphabet);
    j["initial"] = d.names.at(static_cast<std::size_t>(d.initial));
    Json acc = Json::array();
    for (std::size_t i = 0; i < d.accepting.size(); ++i)
        if (d.accepting[i]) acc.push_back(d.names[i]);
    j["accepting"] = std::move(acc);
    Json delta = Json::object();
    for (std::size_t q = 0; q < d.delta.size(); ++q) {
        Json row = Json::object();
        for (std::size_t s = 0; s < d.alphabet.size(); ++s)
            row[std::string(1, d.alphabet[s])] = d.names.at(static_cast<std::size_t>(d.delta[q][s]));
        delta[d.names[q]] = std::move(row);
    }
    j["delta"] = std::move(delta);
    return j;
}

Dfa dfa_from_json(const Json& j) {
    Dfa d;
    for (const auto& name : j.at("states")) d.names.push_back(name.get<std::string>());
    d.alphabet = alphabet_from_json(j.at("alphabet"));
    d.initial = state_index(d.names, j.at("initial").get<std::string>());
    d.accepting.assign(d.names.size(), false);
    for (const auto& name : j.at("accepting"))
        d.accepting[static_cast<std::size_t>(state_index(d.names, name.get<std::string>()))] = true;
    d.delta.assign(d.names.size(), std::vector<int>(d.alphabet.size(), -1));
    for (const auto& [from, row] : j.at("delta").items()) {
        const int q = state_index(d.names, from);
        for (const auto& [sym, to] : row.items()) {
            if (sym.size() != 1) throw Error("delta symbols must be single characters");
            d.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(d.sym_index(sym[0]))] =
                state_index(d.names, to.get<std::string>());
        }
    }
    d.check();
    return d;
}

Json complex_to_json(const ComplexMatrix& m) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json rrow = Json::array(), irow = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix complex_from_json(const Json& j) {
    const Json& re = j.at("re");
    const Json& im = j.at("im");
    const Eigen::Index rows = static_cast<Eigen::Index>(re.size());
    if (rows == 0) throw Error("empty complex matrix");
    const Eigen::Index cols = static_cast<Eigen::Index>(re.at(0).size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = std::complex<double>(re.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>(),
                                           im.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>());
    return m;
}

Json homomorphism_to_json(const HomomorphismSpec& h) {
    Json map = Json::object();
    for (const auto& [c, image] : h.images) map[std::string(1, c)] = image;
    return Json{{"source", alphabet_to_json(h.source)},
                {"target", alphabet_to_json(h.target)},
                {"map", std::move(map)}};
}

HomomorphismSpec homomorphism_from_json(const Json& j) {
    HomomorphismSpec h;
    h.source = alphabet_from_json(j.at("source"));
    h.target = alphabet_from_json(j.at("target"));
    for (const auto& [sym, image] : j.at("map").items()) {
        if (sym.size() != 1) throw Error("homomorphism symbols must be single characters");
        h.images.emplace(sym[0], image.get<std::string>());
    }
    h.check();
    return h;
}

Json chain_report_to_json(const ChainReport& r) {
    Json j;
    j["classes"] = r.classes;
    j["transient"] = r.transient;
    j["period"] = r.period;
    j["irreducible"] = r.irreducible;
    j["aperiodic"] = r.aperiodic;
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open \"" + path + "\"");
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("cannot parse \"" + path + "\": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write \"" + path + "\"");
    out << j.dump(2) << "\n";
}

}  // namespace dsa
