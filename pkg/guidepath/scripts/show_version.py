def main():
    from guidepath.version import version
    print(version)


if __name__ == "__main__":
    main()
