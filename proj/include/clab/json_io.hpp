#pragma once

#include <json.hpp>

#include "clab/certificate.hpp"
#include "clab/extremize.hpp"
#include "clab/geometry.hpp"
#include "clab/inequality.hpp"

namespace clab {

using json = nlohmann::ordered_json;

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

/// Operator spec: { "n", "dimV", "dimE", "coeffs": [[[real]]] } with index
/// order [k][e][v], or { "preset": name, "n": int }.
OperatorSymbol parse_operator(const json& spec);
json operator_to_json(const OperatorSymbol& a);

/// Field spec: { "n", "shape", "h", "kind": "scalar"|"vector", "dimV",
/// "generator": { "name", ...params } | "raw": base64 little-endian doubles }.
SampledField parse_field(const json& spec);
json field_to_json(const SampledField& field, bool embed_values = true);

/// Voxel spec: { "n", "h", "cells": [[int]] } or { "n", "h", "generator":
/// { "name": "ball"|"parallelepiped"|"cube", ... } }.
VoxelSet parse_voxels(const json& spec);

/// Certificate file: arrays m/w/v/e/xi plus provenance and its report.
json certificate_to_json(const OperatorSymbol& a, const CancelingCertificate& cert,
                         const CertificateReport& report);
CancelingCertificate parse_certificate(const json& spec);

DirectionalFamily parse_family(const json& spec);

json verification_to_json(const VerificationReport& report);

}  // namespace clab
