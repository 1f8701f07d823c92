#pragma once

#include "kdnls/grid.hpp"

#include <complex>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace kdnls {

using cd = std::complex<double>;

/// Which representations a Field currently carries.
enum class Repr { spectral, both_synced };

/// A complex 2π-periodic function in dual spectral/physical representation.
///
/// The spectral array (transform order, see GridSpec) is canonical and always
/// present; collocation samples are kept alongside when the field was built
/// from samples or explicitly synced. Fields are immutable values: every
/// operation returns a new Field, so they are safe to share across threads.
class Field {
public:
    static Field zero(const GridSpec& g) {
        return Field(g, std::vector<cd>(static_cast<size_t>(g.num_modes())), nullptr);
    }

    /// coeffs in transform order (index_of/mode_of).
    static Field from_spectral(const GridSpec& g, std::vector<cd> coeffs);

    /// samples at the collocation points x_j = 2πj/N.
    static Field from_physical(const GridSpec& g, std::vector<cd> samples);

    /// Build from (mode, coefficient) pairs; unset modes are zero.
    static Field from_modes(const GridSpec& g,
                            std::initializer_list<std::pair<int, cd>> modes);

    const GridSpec& grid() const { return grid_; }
    Repr repr() const { return phys_ ? Repr::both_synced : Repr::spectral; }

    std::span<const cd> spectral() const { return spec_; }
    cd mode(int n) const { return spec_[static_cast<size_t>(grid_.index_of(n))]; }
    cd mean() const { return mode(0); }
    int size() const { return grid_.num_modes(); }

    /// Collocation samples; uses the cached copy when present.
    std::vector<cd> to_physical() const;
    /// A copy of this field carrying both representations.
    Field with_physical() const;

    Field conjugate() const;

    friend Field operator+(const Field& a, const Field& b);
    friend Field operator-(const Field& a, const Field& b);
    friend Field operator*(cd s, const Field& a);
    Field& operator+=(const Field& b);

private:
    Field(const GridSpec& g, std::vector<cd> spec,
          std::shared_ptr<const std::vector<cd>> phys)
        : grid_(g), spec_(std::move(spec)), phys_(std::move(phys)) {}

    GridSpec grid_;
    std::vector<cd> spec_;
    std::shared_ptr<const std::vector<cd>> phys_;
};

/// Throws GridMismatch unless both fields share a grid.
void require_same_grid(const Field& a, const Field& b);

} // namespace kdnls
