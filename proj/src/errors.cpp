#include "korteweg/errors.hpp"

#include <sstream>

namespace korteweg {

namespace {

std::string positivity_message(std::size_t node, double value)
{
    std::ostringstream os;
    os << "non-positive density " << value << " at node " << node;
    return os.str();
}

std::string stagnation_message(double lambda)
{
    std::ostringstream os;
    os << "damping parameter reached " << lambda << " without an accepted step";
    return os.str();
}

}  // namespace

PositivityError::PositivityError(std::size_t node, double value)
    : std::runtime_error(positivity_message(node, value)), node_(node), value_(value)
{
}

SingularSystemError::SingularSystemError(int iteration, const std::string& what)
    : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
      iteration_(iteration)
{
}

StagnationError::StagnationError(double lambda)
    : std::runtime_error(stagnation_message(lambda)), lambda_(lambda)
{
}

}  // namespace korteweg
