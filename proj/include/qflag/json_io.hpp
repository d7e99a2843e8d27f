#ifndef QFLAG_JSON_IO_HPP
#define QFLAG_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "qflag/decomp.hpp"
#include "qflag/flags.hpp"
#include "qflag/multivector.hpp"
#include "qflag/permutation.hpp"
#include "qflag/qmatrix.hpp"
#include "qflag/quaternion.hpp"

/// JSON encodings. Malformed input raises ParseError.
///   Quaternion   [re, i, j, k]
///   QMatrix      {"rows": r, "cols": c, "entries": [[q, ...], ...]}
///   Permutation  {"one_line": [...]}
///   Multivector  {"n": n, "grade": k, "terms": [{"idx": ["E(1,2)", ...], "c": x}, ...]}
namespace qflag::io {

using json = nlohmann::json;

json to_json(const Quaternion& q);
json to_json(const QMatrix& m);
json to_json(const Permutation& w);
json to_json(const BruhatForm& f);
json to_json(const IwasawaForm& f);
json to_json(const LeafSignature& s);
json to_json(const Multivector& p);
json to_json(const OrbitReport& r);

Quaternion quaternion_from_json(const json& j);
QMatrix qmatrix_from_json(const json& j);
Permutation permutation_from_json(const json& j);
Multivector multivector_from_json(const json& j);

/// Parses text, mapping syntax errors to ParseError.
json parse(const std::string& text);
/// Reads and parses a file; a missing file is a ParseError too.
json read_file(const std::string& path);

}  // namespace qflag::io

#endif  // QFLAG_JSON_IO_HPP
