#ifndef FSUMM_IO_HPP
#define FSUMM_IO_HPP

// JSON encodings of the library's value types.  Encoders are deterministic:
// identical values always dump to identical bytes.

#include <ostream>
#include <string>

#include <json.hpp>

#include "fsumm/freqalg.hpp"
#include "fsumm/hermite.hpp"
#include "fsumm/measures.hpp"
#include "fsumm/qmodular.hpp"
#include "fsumm/spectra.hpp"

namespace fsumm {

using json = nlohmann::json;

json to_json(const Freq& f);
json to_json(const FreqBasis& b);
json to_json(const ExpSum& f);
json to_json(const GridSpec& g);
json to_json(const HbCertificate& c);
json to_json(const HermiteBiehler& H);
json to_json(const SpectrumAtoms& s);
json to_json(const DiscreteMeasure& m);
json to_json(const FSPair& p);
// Rationals are written as decimal-free strings "p/q" (or "p").
json to_json(const QSeries& s);
json to_json(const EtaProductSpec& s);
json to_json(const SelfDualSeries& s);

// Decoders validate shape and throw InvalidArgument on malformed input.
ExpSum expsum_from_json(const json& j);
GridSpec grid_from_json(const json& j);
// Accepts either a full {"E", ...} record or a bare ExpSum for E; A and B
// are re-derived and the certificate re-validated.
HermiteBiehler hb_from_json(const json& j);
DiscreteMeasure measure_from_json(const json& j);
FSPair pair_from_json(const json& j);

// "p/q", "p", or an integer JSON number.
mpq_class parse_rational(const std::string& text);
mpq_class rational_from_json(const json& j);
QSeries qseries_from_json(const json& j);
// {"N": 4, "r": {"1": "2/3", ...}} or r as a list over the divisors of N in
// increasing order.  Throws RcondViolation for inadmissible exponents.
EtaProductSpec eta_spec_from_json(const json& j);

// Rows "m,numerator,denominator" for the coefficients c_m of q^{k/b + m}.
void write_coefficient_csv(std::ostream& os, const EtaProduct& e);
// Rows "n,numerator,denominator" for the determined c_n of a self-dual series.
void write_series_csv(std::ostream& os, const SelfDualSeries& s);

}  // namespace fsumm

#endif  // FSUMM_IO_HPP
