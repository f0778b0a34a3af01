#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtc {

enum class Direction { Forward, Reverse };

const char* to_string(Direction d);
Direction parse_direction(const std::string& s);

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Weight = std::vector<int>;

// Finite-type data together with a label system r_i and the lacing number r.
// Nodes are stored 0-based; everything user-facing prints them 1-based.
struct AlgebraSpec {
    std::string type;
    int rank = 0;
    std::vector<std::vector<int>> cartan;  // cartan[i][j] = C_{i,j}
    std::vector<int> labels;               // r_i
    int lacing = 1;                        // r
    std::vector<int> phi;
    std::vector<int> rdual;                // 1 + r - r_i
    Direction direction = Direction::Forward;
    std::string untwisted_name;
    std::string twisted_name;

    int eps_order() const { return 2 * lacing; }
    bool adjacent(int i, int j) const { return i != j && cartan[i][j] != 0; }
    bool is_long(int i) const { return labels[i] == lacing; }
    // Number of variables in W_{i,a} (forward) or X_{i,a} (reverse).
    int unit_size(int i) const {
        return direction == Direction::Forward ? rdual[i] : labels[i];
    }
    std::string name() const;
};

struct BuildOptions {
    int label_multiplier = 0;  // uniform labels for A_n; 0 keeps the default
    int lacing = 0;            // ambient lacing for A_n; 0 picks max(label, 2)
    Direction direction = Direction::Forward;
};

AlgebraSpec build_algebra(const std::string& type_id, const BuildOptions& opt = {});

// Sign data phi: i ~ j => phi(i)+phi(j) = 1, C_{i,j} = -2 => phi(i) = 1.
std::vector<int> phi_coloring(const std::vector<std::vector<int>>& cartan);

// nullopt when some coordinate is not divisible by rdual_i.
std::optional<Weight> project_weight(const AlgebraSpec& spec, const Weight& lambda);

// Integer vector h with h . column_i(M) equal for every i; used as a height.
std::vector<long long> height_vector(const std::vector<std::vector<int>>& m);

std::vector<std::vector<int>> transpose(const std::vector<std::vector<int>>& m);

}  // namespace qtc
