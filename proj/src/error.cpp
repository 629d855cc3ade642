// Copyright 2026 The civic-digest Authors.
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

#include "civic_digest/error.hpp"

namespace civic_digest {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyResponse: return "EmptyResponse";
    case ErrorCode::MalformedTag: return "MalformedTag";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::SingleClassCorpus: return "SingleClassCorpus";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::CorruptModelFile: return "CorruptModelFile";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::DestinationUnwritable: return "DestinationUnwritable";
    case ErrorCode::FileExists: return "FileExists";
    case ErrorCode::UnknownSubcommand: return "UnknownSubcommand";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace civic_digest
