#pragma once

#include <stdexcept>
#include <string>

namespace serre {

enum class Err {
  NonUnimodular,
  ComplexSpectrum,
  RadicandTooLarge,
  MixedRadicands,
  SingularSystem,
  DomainSignViolation,
  EmptyPolyhedron,
  UnboundedModel,
  InconsistentAxisFlags,
  AxisViolation,
  UnsupportedImage,
  InvalidModel,
  NotHyperbolicDomain,
  UnsupportedModel,
  NotPreserving,
  FormViolation,
  OutsideDomain,
  AutomorphismRejected,
  GridTouchesBoundary,
  IncompatibleExhaustion,
  ResolutionTooLow,
  MarginViolation,
  IntervalViolation,
  CertificateMismatch,
  SchemaViolation,
  IoFailure,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NonUnimodular: return "NonUnimodular";
    case Err::ComplexSpectrum: return "ComplexSpectrum";
    case Err::RadicandTooLarge: return "RadicandTooLarge";
    case Err::MixedRadicands: return "MixedRadicands";
    case Err::SingularSystem: return "SingularSystem";
    case Err::DomainSignViolation: return "DomainSignViolation";
    case Err::EmptyPolyhedron: return "EmptyPolyhedron";
    case Err::UnboundedModel: return "UnboundedModel";
    case Err::InconsistentAxisFlags: return "InconsistentAxisFlags";
    case Err::AxisViolation: return "AxisViolation";
    case Err::UnsupportedImage: return "UnsupportedImage";
    case Err::InvalidModel: return "InvalidModel";
    case Err::NotHyperbolicDomain: return "NotHyperbolicDomain";
    case Err::UnsupportedModel: return "UnsupportedModel";
    case Err::NotPreserving: return "NotPreserving";
    case Err::FormViolation: return "FormViolation";
    case Err::OutsideDomain: return "OutsideDomain";
    case Err::AutomorphismRejected: return "AutomorphismRejected";
    case Err::GridTouchesBoundary: return "GridTouchesBoundary";
    case Err::IncompatibleExhaustion: return "IncompatibleExhaustion";
    case Err::ResolutionTooLow: return "ResolutionTooLow";
    case Err::MarginViolation: return "MarginViolation";
    case Err::IntervalViolation: return "IntervalViolation";
    case Err::CertificateMismatch: return "CertificateMismatch";
    case Err::SchemaViolation: return "SchemaViolation";
    case Err::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void check(bool cond, Err code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace serre
