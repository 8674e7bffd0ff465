#pragma once

#include <string_view>

// Every reason code raised anywhere in the toolkit. docs/ERRORS.md mirrors this list.
namespace tng::reason {

// core model
inline constexpr std::string_view MalformedName = "MALFORMED_NAME";
inline constexpr std::string_view NotASequence = "NOT_A_SEQUENCE";
inline constexpr std::string_view NotAScalar = "NOT_A_SCALAR";
inline constexpr std::string_view WrongValueType = "WRONG_VALUE_TYPE";
inline constexpr std::string_view BadDimensions = "BAD_DIMENSIONS";
inline constexpr std::string_view BadAttributeConfig = "BAD_ATTRIBUTE_CONFIG";

// wire protocol
inline constexpr std::string_view ValueTooLarge = "VALUE_TOO_LARGE";
inline constexpr std::string_view BadTag = "BAD_TAG";
inline constexpr std::string_view Truncated = "TRUNCATED";
inline constexpr std::string_view BadUtf8 = "BAD_UTF8";
inline constexpr std::string_view LengthOverflow = "LENGTH_OVERFLOW";
inline constexpr std::string_view BadValue = "BAD_VALUE";
inline constexpr std::string_view TrailingBytes = "TRAILING_BYTES";
inline constexpr std::string_view FrameTooLarge = "FRAME_TOO_LARGE";
inline constexpr std::string_view ConnectionClosed = "CONNECTION_CLOSED";
inline constexpr std::string_view BadOpcode = "BAD_OPCODE";
inline constexpr std::string_view IoFailure = "IO_FAILURE";

// device dispatch
inline constexpr std::string_view DeviceNotFound = "API_DeviceNotFound";
inline constexpr std::string_view CommandNotFound = "API_CommandNotFound";
inline constexpr std::string_view IncompatibleCmdArgumentType = "API_IncompatibleCmdArgumentType";
inline constexpr std::string_view CommandNotAllowed = "API_CommandNotAllowed";
inline constexpr std::string_view CommandFailed = "API_CommandFailed";
inline constexpr std::string_view BadCommandOutput = "API_BadCommandOutput";
inline constexpr std::string_view AttrNotFound = "API_AttrNotFound";
inline constexpr std::string_view AttrNotWritable = "API_AttrNotWritable";
inline constexpr std::string_view AttrNotReadable = "API_AttrNotReadable";
inline constexpr std::string_view IncompatibleAttrDataType = "API_IncompatibleAttrDataType";
inline constexpr std::string_view WAttrOutsideLimit = "API_WAttrOutsideLimit";
inline constexpr std::string_view AttrReadFailed = "API_AttrReadFailed";
inline constexpr std::string_view PropertyParseFailed = "API_PropertyParseFailed";
inline constexpr std::string_view InitFailed = "API_InitFailed";

// polling
inline constexpr std::string_view PollNotVoid = "POLL_NOT_VOID";
inline constexpr std::string_view BadPeriod = "BAD_PERIOD";
inline constexpr std::string_view PollObjNotFound = "API_PollObjNotFound";
inline constexpr std::string_view DataNotUpdated = "API_DataNotUpdated";

// client
inline constexpr std::string_view DeviceUnreachable = "API_DeviceUnreachable";
inline constexpr std::string_view DeviceTimedOut = "API_DeviceTimedOut";

// server process
inline constexpr std::string_view ServerNotRegistered = "SERVER_NOT_REGISTERED";
inline constexpr std::string_view DbUnreachable = "DB_UNREACHABLE";

// database
inline constexpr std::string_view ClassEmpty = "CLASS_EMPTY";
inline constexpr std::string_view DeviceOwned = "DEVICE_OWNED";
inline constexpr std::string_view DeviceNotDefined = "DEVICE_NOT_DEFINED";
inline constexpr std::string_view ServerNotDefined = "SERVER_NOT_DEFINED";
inline constexpr std::string_view MalformedPattern = "MALFORMED_PATTERN";
inline constexpr std::string_view MalformedArgument = "MALFORMED_ARGUMENT";
inline constexpr std::string_view CorruptFile = "CORRUPT_FILE";

// starter
inline constexpr std::string_view StarterUnknownServer = "STARTER_UnknownServer";
inline constexpr std::string_view StarterSpawnFailed = "STARTER_SpawnFailed";

// astor
inline constexpr std::string_view UnknownServer = "UNKNOWN_SERVER";
inline constexpr std::string_view StarterUnreachable = "STARTER_UNREACHABLE";

// pogo
inline constexpr std::string_view ParseError = "PARSE_ERROR";
inline constexpr std::string_view UnknownType = "UNKNOWN_TYPE";
inline constexpr std::string_view DuplicateName = "DUPLICATE_NAME";
inline constexpr std::string_view ReservedName = "RESERVED_NAME";
inline constexpr std::string_view MarkerCorrupt = "MARKER_CORRUPT";
inline constexpr std::string_view WouldOverwrite = "WOULD_OVERWRITE";

// gateway / JSON mapping
inline constexpr std::string_view BadJson = "BAD_JSON";
inline constexpr std::string_view GatewayInternal = "GATEWAY_INTERNAL";

// example devices
inline constexpr std::string_view SimPlcLengthMismatch = "SIMPLC_LengthMismatch";
inline constexpr std::string_view SimPlcUnknownRegister = "SIMPLC_UnknownRegister";

} // namespace tng::reason
