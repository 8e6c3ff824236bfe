#pragma once

#include <stdexcept>
#include <string>

namespace camsim {

enum class Errc {
  // graph validation
  CycleDetected,
  SlotMismatch,
  DanglingEdge,
  DuplicateEdge,
  IdMismatch,
  OrphanCodelet,
  DuplicateTp,
  // signaling
  DoubleSignal,
  UnderflowSignal,
  InvalidReset,
  // machine
  EmptyCluster,
  CountMismatch,
  UnknownCluster,
  TooFewCUs,
  // delay model / calibration
  NegativeCost,
  UnknownClass,
  UnknownKind,
  FamilyMismatch,
  NoFit,
  // generators
  BadTiles,
  // engine
  Deadlock,
  ClassUnavailable,
  UnknownPolicy,
  // metrics
  EmptyTrace,
  MissingBasic,
  // i/o
  ParseError,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace camsim
