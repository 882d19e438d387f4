#ifndef MFKIT_REGISTRY_HPP
#define MFKIT_REGISTRY_HPP

#include "mfkit/document.hpp"

#include <string>
#include <vector>

namespace mfkit {

// Built-in example constructors.  Argument expressions nest:
//   mf_pair(1,3)   stab_koszul(2,"x*y")   envelope(mf_pair(1,3))
//   cone_id(stab_koszul(1,"x^2"))   split_ses_tot(mf_pair(1,2))
//   tot_id(mf_pair(1,2))
struct ExampleEntry {
  std::string name;
  std::string signature;
  std::string description;
};

const std::vector<ExampleEntry>& example_registry();

// Builds the example named by the expression; throws Error for unknown names
// (message lists the registry) or bad arguments.
Document make_example(const std::string& expr);

// Expected-properties manifest for one example expression.
struct ManifestResult {
  std::string check;
  bool pass;
};
std::vector<ManifestResult> run_manifest(const std::string& expr);

// The expressions exercised by the self test and shipped as corpus files.
const std::vector<std::string>& corpus_expressions();

}  // namespace mfkit

#endif  // MFKIT_REGISTRY_HPP
