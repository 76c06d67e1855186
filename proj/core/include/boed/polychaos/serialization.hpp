#ifndef BOED_POLYCHAOS_SERIALIZATION_HPP
#define BOED_POLYCHAOS_SERIALIZATION_HPP

#include "boed/polychaos/expansion.hpp"

#include <filesystem>
#include <string>

namespace boed::polychaos {

// JSON layout:
//   { "dimension": n_s, "parameter_dimension": n_theta, "degree": p,
//     "ordering": "grlex", "maps": [{"gamma": .., "delta": ..}, ...],
//     "outputs": n_y, "log_space": bool,
//     "coefficients": [row-major n_y x |J| values] }
// The index set is regenerated from (dimension, degree, ordering).

std::string expansion_to_json(const PCExpansion& expansion);
PCExpansion expansion_from_json(const std::string& text);

void save_expansion(const PCExpansion& expansion, const std::filesystem::path& path);
PCExpansion load_expansion(const std::filesystem::path& path);

}  // namespace boed::polychaos

#endif  // BOED_POLYCHAOS_SERIALIZATION_HPP
