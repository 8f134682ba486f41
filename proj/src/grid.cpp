#include "korteweg/grid.hpp"

#include "korteweg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace korteweg {

namespace {

void require_interior(const Grid& grid, int i, int j)
{
    if (!grid.is_interior(i, j)) {
        std::ostringstream os;
        os << "stencil requested at non-interior node (" << i << ", " << j << ")";
        throw ContractViolation(os.str());
    }
}

}  // namespace

int cell_count(double length, double step)
{
    if (!(step > 0.0) || !(length > 0.0))
        throw ContractViolation("grid step and length must be positive");
    const double cells = length / step;
    const double rounded = std::round(cells);
    if (rounded < 2.0 || std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
        std::ostringstream os;
        os << "step " << step << " does not divide length " << length
           << " into an integer number (>= 2) of cells";
        throw ContractViolation(os.str());
    }
    return static_cast<int>(rounded);
}

Grid make_grid(int nx, int ny, double d)
{
    if (nx < 3 || ny < 3)
        throw ContractViolation("grid needs at least 3 nodes per direction");
    if (!(d > 0.0))
        throw ContractViolation("aspect ratio must be positive");
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.d = d;
    g.dx = 1.0 / (nx - 1);
    g.dy = d / (ny - 1);
    return g;
}

Grid make_grid(double dx, double dy, double d)
{
    return make_grid(cell_count(1.0, dx) + 1, cell_count(d, dy) + 1, d);
}

Field::Field(const Grid& grid, double fill)
    : nx_(grid.nx), ny_(grid.ny), values_(grid.node_count(), fill)
{
}

Field sample(const Grid& grid, const std::function<double(double, double)>& f)
{
    Field out(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            out.at(i, j) = f(grid.x(i), grid.y(j));
    return out;
}

double first_derivative_x(const Field& field, const Grid& grid, int i, int j)
{
    require_interior(grid, i, j);
    return (field.at(i + 1, j) - field.at(i - 1, j)) / (2.0 * grid.dx);
}

double first_derivative_y(const Field& field, const Grid& grid, int i, int j)
{
    require_interior(grid, i, j);
    return (field.at(i, j + 1) - field.at(i, j - 1)) / (2.0 * grid.dy);
}

double second_derivative_xx(const Field& field, const Grid& grid, int i, int j)
{
    require_interior(grid, i, j);
    return (field.at(i + 1, j) - 2.0 * field.at(i, j) + field.at(i - 1, j)) / (grid.dx * grid.dx);
}

double second_derivative_yy(const Field& field, const Grid& grid, int i, int j)
{
    require_interior(grid, i, j);
    return (field.at(i, j + 1) - 2.0 * field.at(i, j) + field.at(i, j - 1)) / (grid.dy * grid.dy);
}

std::vector<double> interior_values(const Field& field)
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(field.nx() - 2) * (field.ny() - 2));
    for (int j = 1; j < field.ny() - 1; ++j)
        for (int i = 1; i < field.nx() - 1; ++i)
            out.push_back(field.at(i, j));
    return out;
}

void set_interior_values(Field& field, const std::vector<double>& interior)
{
    const auto expected = static_cast<std::size_t>(field.nx() - 2) * (field.ny() - 2);
    if (interior.size() != expected)
        throw ContractViolation("interior vector size does not match the field");
    std::size_t k = 0;
    for (int j = 1; j < field.ny() - 1; ++j)
        for (int i = 1; i < field.nx() - 1; ++i)
            field.at(i, j) = interior[k++];
}

}  // namespace korteweg
