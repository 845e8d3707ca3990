#pragma once

#include <stdexcept>
#include <string>

namespace micromac {

// Thrown when a state leaves the admissible set (rho <= 0 or theta <= 0),
// or when a time-step computation indicates positivity can no longer be held.
class NonPhysicalState : public std::runtime_error {
  public:
    explicit NonPhysicalState(const std::string& what, int cell = -1)
        : std::runtime_error(cell >= 0 ? what + " (cell " + std::to_string(cell) + ")" : what),
          cell_(cell) {}
    int cell() const { return cell_; }

  private:
    int cell_;
};

class AsymmetricGrid : public std::runtime_error {
  public:
    explicit AsymmetricGrid(const std::string& what) : std::runtime_error(what) {}
};

class UnknownScenario : public std::runtime_error {
  public:
    explicit UnknownScenario(const std::string& name)
        : std::runtime_error("unknown scenario: " + name) {}
};

class VacuumError : public std::runtime_error {
  public:
    explicit VacuumError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace micromac
