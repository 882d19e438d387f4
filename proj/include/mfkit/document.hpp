#ifndef MFKIT_DOCUMENT_HPP
#define MFKIT_DOCUMENT_HPP

#include "mfkit/fold.hpp"

#include <string>
#include <variant>

namespace mfkit {

// Schema / IO failures (CLI exit code 2); semantic failures stay mfkit::Error.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

struct ComplexPair {
  FreeComplex m1;
  FreeComplex c0;
};

// On-disk unit: one ring, one potential, one payload.  Serialization is
// canonical: fixed key order, monomials in descending graded-lex order,
// reduced coefficient strings; writing is idempotent on parsed documents.
struct Document {
  std::string schema_version = "1";
  GradedRing ring;
  Poly w;
  std::variant<Factorization, FactMorphism, FreeComplex, ComplexPair, FactChain> payload;
};

Document parse_document(const std::string& text);
std::string write_document(const Document& doc);

Document make_document(const Factorization& E);
Document make_document(const FactMorphism& g);
Document make_document(const GradedRing& ring, const Poly& w, const FreeComplex& c);
Document make_document(const GradedRing& ring, const Poly& w, const ComplexPair& pair);
Document make_document(const FactChain& chain);

// Accessors that check the payload kind and throw Error otherwise.
const Factorization& as_factorization(const Document& doc);
const FactMorphism& as_morphism(const Document& doc);
const ComplexPair& as_complex_pair(const Document& doc);
const FactChain& as_chain(const Document& doc);

std::string read_file_or_stdin(const std::string& path);   // "-" reads stdin
void write_file_or_stdout(const std::string& path, const std::string& bytes);

}  // namespace mfkit

#endif  // MFKIT_DOCUMENT_HPP
