#pragma once

#include <stdexcept>
#include <string>

namespace sentigraph {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DanglingReference : GraphError {
    explicit DanglingReference(const std::string& what) : GraphError("DanglingReference: " + what) {}
};
struct SelfLink : GraphError {
    explicit SelfLink(const std::string& what) : GraphError("SelfLink: " + what) {}
};
struct DuplicateId : GraphError {
    explicit DuplicateId(const std::string& what) : GraphError("DuplicateId: " + what) {}
};
struct UnknownUser : GraphError {
    explicit UnknownUser(const std::string& what) : GraphError("UnknownUser: " + what) {}
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AuthorMismatch : ModelError {
    explicit AuthorMismatch(const std::string& what) : ModelError("AuthorMismatch: " + what) {}
};
struct NotANeighbor : ModelError {
    explicit NotANeighbor(const std::string& what) : ModelError("NotANeighbor: " + what) {}
};
struct MissingInfluence : ModelError {
    explicit MissingInfluence(const std::string& what) : ModelError("MissingInfluence: " + what) {}
};
struct IncompleteLabeling : ModelError {
    explicit IncompleteLabeling(const std::string& what) : ModelError("IncompleteLabeling: " + what) {}
};

struct EmptyGraph : ModelError {
    explicit EmptyGraph(const std::string& what) : ModelError("EmptyGraph: " + what) {}
};
struct NoFreeVariables : ModelError {
    explicit NoFreeVariables(const std::string& what) : ModelError("NoFreeVariables: " + what) {}
};
struct NoSeedUsers : ModelError {
    explicit NoSeedUsers(const std::string& what) : ModelError("NoSeedUsers: " + what) {}
};
struct EmptyEvalSet : ModelError {
    explicit EmptyEvalSet(const std::string& what) : ModelError("EmptyEvalSet: " + what) {}
};
struct EvenRunCount : ModelError {
    explicit EvenRunCount(const std::string& what) : ModelError("EvenRunCount: " + what) {}
};
struct VariableSetMismatch : ModelError {
    explicit VariableSetMismatch(const std::string& what) : ModelError("VariableSetMismatch: " + what) {}
};
struct MissingPrediction : ModelError {
    explicit MissingPrediction(const std::string& what) : ModelError("MissingPrediction: " + what) {}
};
struct TooLarge : ModelError {
    explicit TooLarge(const std::string& what) : ModelError("TooLarge: " + what) {}
};
struct InvalidConfig : ModelError {
    explicit InvalidConfig(const std::string& what) : ModelError("InvalidConfig: " + what) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sentigraph
