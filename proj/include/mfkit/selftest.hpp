#ifndef MFKIT_SELFTEST_HPP
#define MFKIT_SELFTEST_HPP

#include <iosfwd>
#include <string>

namespace mfkit::selftest {

// Acceptance suites.  Each prints diagnostics to `os` and returns pass/fail;
// all arithmetic checks are exact (zero tolerance).
bool factorization_axioms(std::ostream& os);   // 1: registry + 200 random stabilizations
bool koszul_identities(std::ostream& os);      // 2: d^2 = 0, dh + hd = w, h^2 = 0
bool fold_identities(std::ostream& os);        // 3: block sums, degree-0 fold identity
bool triangulated_shadow(std::ostream& os);    // 4: shift/twist, cones, envelopes, triangles
bool orthogonality(std::ostream& os);          // 5: Hom(P, totalizations) = 0 on the window
bool graded_hom_oracle(std::ostream& os);      // 6: dims vs brute-force oracle
bool spectral_sequence(std::ostream& os);      // 7: E1 totals vs direct Hom
bool base_change_functoriality(std::ostream& os);  // 8

// Registry manifests plus round-trip idempotence of shipped corpus files
// (skipped with a note when corpus_dir is empty).
bool registry_manifests(std::ostream& os);
bool corpus_roundtrip(std::ostream& os, const std::string& corpus_dir);

// Runs suites 1-8, the registry manifests, and the corpus round-trip.
bool run_all(std::ostream& os, const std::string& corpus_dir);

}  // namespace mfkit::selftest

#endif  // MFKIT_SELFTEST_HPP
