#pragma once

#include "qtchar/engine.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtc {

class DualityViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// KR data on the interpolating side: k units of node i starting at a.
// Forward units are W_{i,a (q^{2r} t^2)^j}, reverse units X_{i,a (q^{2 r_i} t^2)^j}.
struct KRSpec {
    int node = 0;
    int k = 1;
    SpectralIndex a;
};

KRSpec parse_kr(const std::string& text);  // "i:k:qexp:texp", node 1-based
Monomial kr_interp_monomial(const Scheme& s, const KRSpec& spec);

struct DimsReport {
    Int dim_q;
    Int dim_t;
    Int iota_free;
};

DimsReport dims_report(const Scheme& s, const CharPoly& p);

struct DualReport {
    bool highest_outside_iota = false;
    bool source_minuscule = false;
    bool dual_minuscule = false;
    bool dual_is_kr = false;
    DimsReport dims;
    std::vector<std::string> notes;
    bool ok() const { return highest_outside_iota && source_minuscule && dual_minuscule && dual_is_kr; }
};

// source: the specialization on the side of the module we start from (Y_q
// forward, twisted reverse); dual: the other one.
struct DualPair {
    CharResult interp;
    CharPoly source;
    CharPoly dual;
    DualReport report;
};

DualPair make_pair_from(const Scheme& s, CharResult interp);
DualPair dual_pair_for_kr(const Scheme& s, const KRSpec& spec, const EngineOptions& opt = {});
// Caller vouches that the source tensor product is simple.
DualPair tensor_dual(const Scheme& s, const std::vector<DualPair>& pairs);

// A single-node string of positive variables in a specialized ring, possibly
// spread over several eps classes in the same way.
bool is_kr_string(const Monomial& m, const RingContext& ring, int step);

struct Identity {
    std::string name;
    Int lhs;
    Int rhs;
    bool pass() const { return lhs == rhs; }
};

// T-system identities for the short node of G2, evaluated on computed dimensions.
std::vector<Identity> t_system_check(const Scheme& s, int up_to_k, const EngineOptions& opt = {});

// Ordinary characters: weight (fundamental-weight coordinates) -> multiplicity.
using WeightChar = std::map<Weight, Int>;

WeightChar ordinary_character(const Scheme& s, const CharPoly& specialized);

struct OrdinaryReport {
    WeightChar projected;  // Pi applied to the source character
    WeightChar dual;
    WeightChar surplus;    // projected - dual
    bool nonnegative = false;
    bool highest_match = false;
    bool ok() const { return nonnegative && highest_match; }
};

OrdinaryReport ordinary_duality_check(const Scheme& s, const DualPair& pair);

}  // namespace qtc
