#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace korteweg {

/// Uniform tensor grid on [0,1] x [0,d]; node (i,j) sits at (i*dx, j*dy).
struct Grid {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double d = 0.0;

    double x(int i) const { return i * dx; }
    double y(int j) const { return j * dy; }

    std::size_t node_count() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t interior_count() const { return static_cast<std::size_t>(nx - 2) * (ny - 2); }

    /// Row-major node index, j outer.
    std::size_t node(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    /// Row-major index among interior nodes (1 <= i <= nx-2, 1 <= j <= ny-2).
    std::size_t unknown(int i, int j) const
    {
        return static_cast<std::size_t>(j - 1) * (nx - 2) + (i - 1);
    }
    bool is_interior(int i, int j) const { return i > 0 && i < nx - 1 && j > 0 && j < ny - 1; }
};

/// Grid with nodes spaced dx along x and dy along y. Each step must divide its
/// side length into an integer number of cells to within 1e-9.
Grid make_grid(double dx, double dy, double d);
Grid make_grid(int nx, int ny, double d);

/// Number of cells a step produces over `length`; throws if it does not divide.
int cell_count(double length, double step);

/// Nodal density values in Grid::node order.
class Field {
public:
    Field() = default;
    explicit Field(const Grid& grid, double fill = 0.0);

    int nx() const { return nx_; }
    int ny() const { return ny_; }

    double& at(int i, int j) { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
    double at(int i, int j) const { return values_[static_cast<std::size_t>(j) * nx_ + i]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    bool operator==(const Field&) const = default;

private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<double> values_;
};

/// Samples f(x, y) at every node.
Field sample(const Grid& grid, const std::function<double(double, double)>& f);

/// Central second-order stencils; (i,j) must be an interior node.
double first_derivative_x(const Field& field, const Grid& grid, int i, int j);
double first_derivative_y(const Field& field, const Grid& grid, int i, int j);
double second_derivative_xx(const Field& field, const Grid& grid, int i, int j);
double second_derivative_yy(const Field& field, const Grid& grid, int i, int j);

/// Interior values packed in Grid::unknown order.
std::vector<double> interior_values(const Field& field);
void set_interior_values(Field& field, const std::vector<double>& interior);

}  // namespace korteweg
