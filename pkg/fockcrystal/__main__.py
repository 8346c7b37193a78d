from fockcrystal.cli import main

main()
