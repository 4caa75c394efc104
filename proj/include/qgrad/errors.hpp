// Copyright 2026 The qgrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qgrad {

/**
 * Classifies every error the library raises so callers can react
 * programmatically instead of parsing messages.
 */
enum class ErrorKind {
    // Circuit construction.
    WireOutOfRange,
    OverlappingWires,
    OverlappingMeasurementWires,
    ArityMismatch,
    InvalidParameter,
    NoMatrixAvailable,
    NoDecompositionAvailable,
    UnknownOperation,
    UnknownObservable,
    // Device registry and execution.
    DuplicateShortName,
    UnknownDevice,
    IncompatibleApiVersion,
    UnsupportedOperation,
    UnsupportedObservable,
    TooManyWires,
    SampleRequiresShots,
    InvalidDistribution,
    NotGaussian,
    // Differentiation.
    NotAnalyticallyDifferentiable,
    DeviceJacobianUnsupported,
    NonDifferentiableMeasurement,
    NonScalarCost,
    ShapeMismatch,
    // Templates.
    TooManyFeatures,
    InvalidGateEmission,
    // Collections and file formats.
    LengthMismatch,
    ParseError,
    InvalidConfig,
    IoError,
};

inline const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::WireOutOfRange: return "WireOutOfRange";
    case ErrorKind::OverlappingWires: return "OverlappingWires";
    case ErrorKind::OverlappingMeasurementWires: return "OverlappingMeasurementWires";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NoMatrixAvailable: return "NoMatrixAvailable";
    case ErrorKind::NoDecompositionAvailable: return "NoDecompositionAvailable";
    case ErrorKind::UnknownOperation: return "UnknownOperation";
    case ErrorKind::UnknownObservable: return "UnknownObservable";
    case ErrorKind::DuplicateShortName: return "DuplicateShortName";
    case ErrorKind::UnknownDevice: return "UnknownDevice";
    case ErrorKind::IncompatibleApiVersion: return "IncompatibleApiVersion";
    case ErrorKind::UnsupportedOperation: return "UnsupportedOperation";
    case ErrorKind::UnsupportedObservable: return "UnsupportedObservable";
    case ErrorKind::TooManyWires: return "TooManyWires";
    case ErrorKind::SampleRequiresShots: return "SampleRequiresShots";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::NotGaussian: return "NotGaussian";
    case ErrorKind::NotAnalyticallyDifferentiable: return "NotAnalyticallyDifferentiable";
    case ErrorKind::DeviceJacobianUnsupported: return "DeviceJacobianUnsupported";
    case ErrorKind::NonDifferentiableMeasurement: return "NonDifferentiableMeasurement";
    case ErrorKind::NonScalarCost: return "NonScalarCost";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::TooManyFeatures: return "TooManyFeatures";
    case ErrorKind::InvalidGateEmission: return "InvalidGateEmission";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/** Single exception type carrying a machine-checkable kind plus a message. */
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace qgrad
