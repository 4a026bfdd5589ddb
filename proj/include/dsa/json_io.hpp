// json_io.hpp -- the toolkit's file formats. Rationals travel as "p/q"
// strings (integer shorthand allowed), so files round-trip exactly.

#pragma once

#include "dsa/automata.hpp"
#include "dsa/constructions.hpp"
#include "dsa/markov.hpp"
#include "dsa/prototype.hpp"
#include "dsa/regclass.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace dsa {

using Json = nlohmann::json;

Json matrix_to_json(const StochMatrix& m);
StochMatrix matrix_from_json(const Json& j);

Json prac_to_json(const PraC& a);
PraC prac_from_json(const Json& j);

Json pradh_to_json(const PraDh& a);
PraDh pradh_from_json(const Json& j);

Json pra15_to_json(const Pra15& a);
Pra15 pra15_from_json(const Json& j);

/// Dispatches on the "type" field: "prac" | "pradh" | "pra15".
using AutomatonFile = std::variant<PraC, PraDh, Pra15>;
AutomatonFile automaton_from_json(const Json& j);
Json automaton_to_json(const AutomatonFile& a);

Json dfa_to_json(const Dfa& d);
Dfa dfa_from_json(const Json& j);

Json complex_to_json(const ComplexMatrix& m);
ComplexMatrix complex_from_json(const Json& j);

Json homomorphism_to_json(const HomomorphismSpec& h);
HomomorphismSpec homomorphism_from_json(const Json& j);

Json chain_report_to_json(const ChainReport& r);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace dsa
